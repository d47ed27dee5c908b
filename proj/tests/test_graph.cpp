#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "locallim/errors.hpp"
#include "locallim/graph.hpp"
#include "locallim/planarity.hpp"
#include "locallim/rng.hpp"
#include "locallim/samplers.hpp"

using namespace locallim;

namespace {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(1, n);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("parse: empty edge set and triangle") {
  Graph g = parse_graph("3 0");
  CHECK(g.n() == 3);
  CHECK(g.m() == 0);

  Graph t = parse_graph("3 3\n1 2\n1 3\n2 3");
  CHECK(t.m() == 3);
  CHECK(t.has_edge(1, 3));
  CHECK(t == complete(3));
}

TEST_CASE("parse: comments and blank lines are skipped") {
  Graph g = parse_graph("# sampler=gnm\n\n4 2\n1 2\n# mid\n3 4\n");
  CHECK(g.m() == 2);
  CHECK(g.has_edge(3, 4));
}

TEST_CASE("parse errors name the line") {
  try {
    parse_graph("2 1\n2 1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_graph("3 1\n1 4"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 1\n1 1"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 2\n1 2\n1 2"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 2\n1 2"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 1\n1 x"), ParseError);
  CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("edge list round trip") {
  Rng rng(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Graph g = sample_gnm(12, static_cast<long long>(rng.below(40)), rng);
    CHECK(parse_graph(to_edge_list(g)) == g);
  }
  MultiGraph mg(1, {{1, 1}, {1, 1}});
  MultiGraph back = parse_multigraph(to_edge_list(mg));
  CHECK(back.m() == 2);
  CHECK(back.degree(1) == 4);
}

TEST_CASE("graph constructor rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), ContractViolation);
  CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}}), ContractViolation);
  CHECK_THROWS_AS(Graph(3, {{0, 2}}), ContractViolation);
  Graph g(3, {{3, 1}});
  CHECK(g.edges()[0] == Edge{1, 3});
}

TEST_CASE("components are ordered by size then smallest label") {
  Graph tri_iso(4, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(components(tri_iso) == std::vector<std::vector<int>>{{1, 2, 3}, {4}});
  CHECK(components(Graph(3, {})) == std::vector<std::vector<int>>{{1}, {2}, {3}});
  Graph paths(5, {{1, 2}, {3, 4}, {4, 5}});
  CHECK(components(paths) == std::vector<std::vector<int>>{{3, 4, 5}, {1, 2}});
}

TEST_CASE("largest component tie-break") {
  Graph two_tri(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
  CHECK(largest_component(two_tri) == std::vector<int>{1, 2, 3});
  Graph path(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(largest_component(path).size() == 5);
  Graph star(7, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {6, 7}});
  CHECK(largest_component(star) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("distances") {
  Graph c5 = cycle(5);
  CHECK(distance(c5, 1, 2) == 1);
  CHECK(distance(c5, 1, 3) == 2);
  Graph split(4, {{1, 2}, {3, 4}});
  CHECK_FALSE(distance(split, 1, 3).has_value());
  CHECK(bfs_distances(split, 1)[4] == -1);
}

TEST_CASE("balls are induced") {
  Graph tri = complete(3);
  auto b = ball(tri, 2, 1);
  CHECK(b.size() == 3);
  CHECK(b.graph.m() == 3);
  CHECK_FALSE(b.is_tree());

  Graph path(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto p = ball(path, 3, 1);
  CHECK(p.size() == 3);
  CHECK(p.graph.m() == 2);
  CHECK(p.root == 1);
  CHECK(p.graph.degree(p.root) == 2);
  CHECK(p.is_tree());

  auto single = ball(tri, 1, 0);
  CHECK(single.size() == 1);
  CHECK(single.graph.m() == 0);
}

TEST_CASE("ball extractor is reusable and matches one-off balls") {
  Rng rng(5, 0);
  Graph g = sample_gnm(60, 70, rng);
  BallExtractor extract(g);
  for (int v = 1; v <= g.n(); ++v) {
    for (int r = 0; r <= 3; ++r) {
      auto a = extract(v, r);
      auto b = ball(g, v, r);
      CHECK(a.graph == b.graph);
      CHECK(a.labels == b.labels);
    }
  }
}

TEST_CASE("planarity: small named graphs") {
  CHECK(is_planar(complete(4)));
  CHECK_FALSE(is_planar(complete(5)));
  std::vector<Edge> k33;
  for (int a = 1; a <= 3; ++a)
    for (int b = 4; b <= 6; ++b) k33.emplace_back(a, b);
  CHECK_FALSE(is_planar(Graph(6, k33)));
  CHECK(is_planar(cycle(9)));
  CHECK(max_planar_edges(5) == 9);
  CHECK(max_planar_edges(2) == 1);
}

// On at most six vertices a graph is non-planar iff it contains K5, K5 with
// one edge subdivided, or K3,3 as a subgraph (no other Kuratowski
// subdivision fits).
TEST_CASE("planarity agrees with a Kuratowski brute force on all graphs with 6 labels") {
  constexpr int n = 6;
  std::vector<Edge> pairs;
  std::array<std::array<int, n + 1>, n + 1> idx{};
  for (int v = 2; v <= n; ++v)
    for (int u = 1; u < v; ++u) {
      idx[u][v] = idx[v][u] = static_cast<int>(pairs.size());
      pairs.emplace_back(u, v);
    }
  auto adj = [&](unsigned mask, int u, int v) { return (mask >> idx[u][v]) & 1u; };
  auto contains_k5_on = [&](unsigned mask, const std::vector<int>& vs, int skip_a, int skip_b) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        int a = vs[i], b = vs[j];
        if ((a == skip_a && b == skip_b) || (a == skip_b && b == skip_a)) continue;
        if (!adj(mask, a, b)) return false;
      }
    return true;
  };
  int nonplanar = 0;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    bool kuratowski = false;
    for (int out = 1; out <= n && !kuratowski; ++out) {
      std::vector<int> five;
      for (int v = 1; v <= n; ++v)
        if (v != out) five.push_back(v);
      if (contains_k5_on(mask, five, 0, 0)) kuratowski = true;
      // `out` subdivides the edge a-b of a K5 on the others.
      for (std::size_t i = 0; i < five.size() && !kuratowski; ++i)
        for (std::size_t j = i + 1; j < five.size() && !kuratowski; ++j) {
          int a = five[i], b = five[j];
          if (adj(mask, out, a) && adj(mask, out, b) && contains_k5_on(mask, five, a, b))
            kuratowski = true;
        }
    }
    for (int s = 0; s < (1 << n) && !kuratowski; ++s) {
      if (__builtin_popcount(static_cast<unsigned>(s)) != 3 || !(s & 1)) continue;
      bool all = true;
      for (int a = 1; a <= n && all; ++a)
        for (int b = 1; b <= n && all; ++b)
          if ((s >> (a - 1) & 1) && !(s >> (b - 1) & 1)) all = adj(mask, a, b);
      kuratowski = all;
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) edges.push_back(pairs[i]);
    Graph g(n, edges);
    if (is_planar(g) == kuratowski) {
      FAIL_CHECK("mismatch on mask " << mask);
      break;
    }
    nonplanar += kuratowski;
  }
  CHECK(nonplanar > 0);
}

TEST_CASE("planarity: random larger graphs respect Euler's bound") {
  Rng rng(2, 0);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 5 + static_cast<int>(rng.below(20));
    long long universe = static_cast<long long>(n) * (n - 1) / 2;
    Graph g = sample_gnm(n, static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe) + 1)), rng);
    if (static_cast<long long>(g.m()) > max_planar_edges(n)) CHECK_FALSE(is_planar(g));
  }
  // Maximal planar start states are planar at every prefix.
  for (int n = 3; n <= 30; ++n)
    for (long long m = 0; m <= max_planar_edges(n); m += 7) CHECK(is_planar(planar_start_state(n, m)));
}
