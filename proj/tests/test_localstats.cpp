#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "locallim/ball_code.hpp"
#include "locallim/errors.hpp"
#include "locallim/graph.hpp"
#include "locallim/localstats.hpp"
#include "locallim/rng.hpp"
#include "locallim/samplers.hpp"

using namespace locallim;

namespace {

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(1, n);
  return Graph(n, e);
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int v = 2; v <= leaves + 1; ++v) e.emplace_back(1, v);
  return Graph(leaves + 1, e);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
  return Graph(g.n(), e);
}

std::vector<int> random_perm(int n, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(n) + 1);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n; i >= 2; --i) std::swap(p[i], p[1 + rng.below(static_cast<std::uint64_t>(i))]);
  return p;
}

// Root-preserving isomorphism by trying every bijection.
bool rooted_isomorphic(const RootedBall& a, const RootedBall& b) {
  const int n = a.graph.n();
  if (n != b.graph.n() || a.graph.m() != b.graph.m()) return false;
  std::vector<int> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), 1);
  do {
    if (map[a.root - 1] != b.root) continue;
    bool ok = true;
    for (auto [u, v] : a.graph.edges())
      if (!b.graph.has_edge(map[u - 1], map[v - 1])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(map.begin(), map.end()));
  return false;
}

LimitDist dist(std::initializer_list<std::pair<const char*, double>> entries, double leftover = 0) {
  LimitDist d;
  for (auto [code, p] : entries) d.mass[BallCode{code, true}] = p;
  d.leftover = leftover;
  return d;
}

}  // namespace

TEST_CASE("plane code of the example tree") {
  Graph g(10, {{3, 5}, {3, 9}, {3, 2}, {9, 8}, {9, 7}, {2, 4}, {8, 10}, {7, 1}, {7, 6}});
  auto t = plane_code(ball(g, 3, 4));
  CHECK(t.child_counts == std::vector<int>{3, 1, 0, 2, 0, 2, 1, 0, 0, 0});
  CHECK(t.size == 10);
  auto t3 = plane_code(ball(g, 3, 3));
  CHECK(t3.child_counts == std::vector<int>{3, 1, 0, 2, 0, 2, 1});
  CHECK(t3.to_string() == "3:3,1,0,2,0,2,1");
}

TEST_CASE("plane code: single vertex and child order by label") {
  Graph one(1, {});
  CHECK(plane_code(ball(one, 1, 2)).child_counts == std::vector<int>{0});
  // Root 1 with children 7 and 4; 7 has a child, 4 does not.
  Graph g(8, {{1, 7}, {1, 4}, {7, 8}});
  CHECK(plane_code(ball(g, 1, 2)).child_counts == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(plane_code(ball(cycle(3), 1, 1)), ContractViolation);
}

TEST_CASE("property: PlaneCoder agrees with plane_code on materialised balls") {
  Rng rng(21, 0);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 10 + static_cast<int>(rng.below(50));
    Graph g = sample_gnm(n, static_cast<long long>(rng.below(static_cast<std::uint64_t>(n + 5))), rng);
    PlaneCoder coder(g);
    for (int v = 1; v <= n; ++v)
      for (int r = 0; r <= 3; ++r) {
        auto b = ball(g, v, r);
        auto fast = coder(v, r);
        REQUIRE(fast.has_value() == b.is_tree());
        if (fast) CHECK(*fast == plane_code(b));
      }
  }
}

TEST_CASE("census examples") {
  auto path5 = PlaneTree::from_child_counts({2, 1, 1}, 2);
  CHECK(census(cycle(7), 2, path5) == 7);
  // In C5 the radius-2 ball closes the cycle.
  CHECK(census(cycle(5), 2, path5) == 0);
  CHECK(census(star(4), 1, PlaneTree::from_child_counts({4}, 1)) == 1);
  CHECK(census(star(4), 1, PlaneTree::from_child_counts({1}, 1)) == 4);
  CHECK(plane_census(cycle(3), 1).empty());
  long long total = 0;
  for (const auto& [t, c] : plane_census(star(4), 2)) total += c;
  CHECK(total == 5);
}

TEST_CASE("ball codes: trees vs cyclic balls") {
  auto p = ball_code(ball(Graph(3, {{1, 2}, {2, 3}}), 2, 1));
  CHECK(p.is_tree);
  CHECK(p.bytes.front() == 'T');
  auto c = ball_code(ball(cycle(3), 1, 1));
  CHECK_FALSE(c.is_tree);
  CHECK(c.bytes.front() == 'G');
  CHECK(c != p);
  // Root position matters: end of a path vs its middle.
  CHECK(ball_code(ball(Graph(3, {{1, 2}, {2, 3}}), 1, 2)) != p);
  CHECK(BallCode::from_hex(c.hex()) == c);
  CHECK(tree_code(plane_code(ball(star(3), 1, 1))) == ball_code(ball(star(3), 1, 1)));
}

TEST_CASE("property: ball codes are invariant under relabelling") {
  Rng rng(8, 0);
  for (int rep = 0; rep < 10'000; ++rep) {
    int n = 3 + static_cast<int>(rng.below(10));
    long long universe = static_cast<long long>(n) * (n - 1) / 2;
    Graph g = sample_gnm(n, static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe) + 1)), rng);
    auto perm = random_perm(n, rng);
    Graph h = relabel(g, perm);
    int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int r = static_cast<int>(rng.below(4));
    REQUIRE(ball_code(ball(g, v, r)) == ball_code(ball(h, perm[v], r)));
  }
}

TEST_CASE("property: equal codes iff rooted isomorphic (brute force up to 6 vertices)") {
  Rng rng(13, 0);
  std::vector<RootedBall> balls;
  for (int rep = 0; rep < 300; ++rep) {
    int n = 1 + static_cast<int>(rng.below(6));
    long long universe = static_cast<long long>(n) * (n - 1) / 2;
    Graph g = sample_gnm(n, static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe) + 1)), rng);
    balls.push_back(ball(g, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))), n));
  }
  int equal_pairs = 0;
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      bool same = ball_code(balls[i]) == ball_code(balls[j]);
      REQUIRE(same == rooted_isomorphic(balls[i], balls[j]));
      equal_pairs += same;
    }
  CHECK(equal_pairs > 100);
}

TEST_CASE("symmetric balls are coded without exhausting the search") {
  std::vector<Edge> e;
  for (int u = 1; u <= 12; ++u)
    for (int v = u + 1; v <= 12; ++v) e.emplace_back(u, v);
  Graph k12(12, e);
  CHECK(ball_code(ball(k12, 1, 1)) == ball_code(ball(k12, 7, 1)));
  // K_{2,12} rooted at a pole and at a middle vertex.
  std::vector<Edge> f;
  for (int v = 3; v <= 14; ++v) {
    f.emplace_back(1, v);
    f.emplace_back(2, v);
  }
  Graph k2(14, f);
  CHECK(ball_code(ball(k2, 1, 2)) == ball_code(ball(k2, 2, 2)));
  CHECK(ball_code(ball(k2, 1, 2)) != ball_code(ball(k2, 3, 2)));
  // Two disjoint-looking 6-cycles through a shared root differ from a 12-cycle.
  Graph c12 = cycle(12);
  CHECK(ball_code(ball(c12, 1, 6)) != ball_code(ball(k2, 1, 1)));
}

TEST_CASE("oversize balls go to the X bucket") {
  // Wheel with 80 spokes: the hub's radius-1 ball has 81 vertices and cycles.
  std::vector<Edge> e;
  for (int v = 2; v <= 81; ++v) {
    e.emplace_back(1, v);
    e.emplace_back(v, v == 81 ? 2 : v + 1);
  }
  Graph wheel(81, e);
  CHECK_THROWS_AS(ball_code(ball(wheel, 1, 1)), OversizeError);
  EmpiricalDist d;
  Rng rng(1, 0);
  accumulate(d, wheel, RootPolicy::uniform, 1, rng, RootMode::all);
  CHECK(d.total == 81);
  CHECK(d.counts[BallCode::oversize()] == 1);
  // Tree balls are encoded at any size.
  CHECK(ball_code(ball(star(200), 1, 1)).is_tree);
}

TEST_CASE("policy targets") {
  Graph two_tri(7, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
  CHECK(policy_targets(two_tri, RootPolicy::largest_component) == std::vector<int>{1, 2, 3});
  CHECK(policy_targets(two_tri, RootPolicy::rest) == std::vector<int>{4, 5, 6, 7});
  CHECK(policy_targets(two_tri, RootPolicy::uniform).size() == 7);
  CHECK(policy_targets(two_tri, RootPolicy::complex_part).empty());
  CHECK(policy_targets(two_tri, RootPolicy::kernel).empty());
  // Theta with a pendant vertex at 4.
  Graph th(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {4, 5}});
  CHECK(policy_targets(th, RootPolicy::complex_part) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(policy_targets(th, RootPolicy::core) == std::vector<int>{1, 2, 3, 4});
  CHECK(policy_targets(th, RootPolicy::kernel) == std::vector<int>{1, 2});
  CHECK(policy_targets(th, RootPolicy::non_complex_part).empty());
}

TEST_CASE("empirical distributions") {
  std::vector<Graph> singles(10, Graph(1, {}));
  Rng rng(4, 0);
  auto d = empirical_dist(singles, RootPolicy::uniform, 2, rng);
  CHECK(d.total == 10);
  CHECK(d.counts.size() == 1);
  CHECK(normalized(d).at(d.counts.begin()->first) == 1.0);

  std::vector<Graph> forests(5, Graph(4, {{1, 2}, {3, 4}}));
  CHECK_THROWS_AS(empirical_dist(forests, RootPolicy::kernel, 1, rng), EmptyClassError);

  EmpiricalDist skip;
  CHECK_FALSE(accumulate(skip, forests[0], RootPolicy::kernel, 1, rng));
  CHECK(skip.skipped == 1);
  CHECK(skip.total == 0);
  CHECK_THROWS_AS(normalized(skip), ContractViolation);

  // Largest component of two triangles is {1,2,3}; every ball is a triangle.
  Graph two_tri(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
  std::vector<Graph> tris(20, two_tri);
  auto t = empirical_dist(tris, RootPolicy::largest_component, 1, rng, RootMode::all);
  CHECK(t.total == 60);
  CHECK(t.counts.size() == 1);

  EmpiricalDist a, b;
  a.add(BallCode{"TA", true}, 3);
  b.add(BallCode{"TA", true}, 1);
  b.add(BallCode{"TB", true}, 2);
  a.merge(b);
  CHECK(a.total == 6);
  CHECK(a.counts[BallCode{"TA", true}] == 4);
  CHECK(to_csv(a).rfind("code,count,frequency\n", 0) == 0);
}

TEST_CASE("total variation examples") {
  auto x = dist({{"TA", 1.0}});
  auto y = dist({{"TB", 1.0}});
  CHECK(tv_distance(x, x) == 0.0);
  CHECK(tv_distance(x, y) == 1.0);
  CHECK(tv_distance(dist({{"TA", 0.75}, {"TB", 0.25}}), dist({{"TA", 0.5}, {"TB", 0.5}})) ==
        doctest::Approx(0.25));
  CHECK(tv_distance(dist({{"TA", 0.9}}, 0.1), x) == doctest::Approx(0.1));
  CHECK(tv_distance(dist({{"TA", 0.5}}, 0.5), dist({{"TB", 0.5}}, 0.5)) == doctest::Approx(0.5));
}

TEST_CASE("property: total variation is a bounded metric") {
  Rng rng(30, 0);
  const char* codes[] = {"TA", "TB", "TC", "TD", "TE"};
  auto random_dist = [&] {
    LimitDist d;
    double weights[5], sum = 0;
    for (double& w : weights) sum += w = rng.uniform();
    for (int i = 0; i < 5; ++i)
      if (weights[i] > 0.2 * sum) d.mass[BallCode{codes[i], true}] = weights[i] / sum;
    double mass = d.total();
    d.leftover = 1 - mass;
    return d;
  };
  for (int rep = 0; rep < 2000; ++rep) {
    auto a = random_dist(), b = random_dist(), c = random_dist();
    double ab = tv_distance(a, b);
    CHECK(ab >= 0);
    CHECK(ab <= 1);
    CHECK(ab == doctest::Approx(tv_distance(b, a)));
    CHECK(tv_distance(a, a) == doctest::Approx(0.0));
    CHECK(tv_distance(a, c) <= ab + tv_distance(b, c) + 1e-12);
  }
}
