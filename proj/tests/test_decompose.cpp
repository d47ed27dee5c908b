#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "locallim/decompose.hpp"
#include "locallim/errors.hpp"
#include "locallim/experiment.hpp"
#include "locallim/rng.hpp"
#include "locallim/samplers.hpp"

using namespace locallim;

namespace {

std::vector<Edge> k4_edges(int base = 0) {
  return {{base + 1, base + 2}, {base + 1, base + 3}, {base + 1, base + 4},
          {base + 2, base + 3}, {base + 2, base + 4}, {base + 3, base + 4}};
}

// u=1, v=2 joined by paths of lengths 1, 2, 2.
Graph theta() { return Graph(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}); }

Graph figure_eight() { return Graph(5, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {4, 5}, {1, 5}}); }

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("split_complex") {
  // Unicyclic: a 4-cycle with a pendant path.
  Graph uni(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}, {5, 6}});
  auto s = split_complex(uni);
  CHECK(s.complex_vertices.empty());
  CHECK(s.complex_part.m() == 0);
  CHECK(s.non_complex_part == uni);

  auto e = k4_edges();
  e.emplace_back(5, 6);
  auto k = split_complex(Graph(6, e));
  CHECK(k.complex_vertices == std::vector<int>{1, 2, 3, 4});
  CHECK(k.complex_part.m() == 6);
  CHECK(k.non_complex_vertices == std::vector<int>{5, 6});
  CHECK(k.non_complex_part.m() == 1);

  Graph forest(5, {{1, 2}, {3, 4}});
  CHECK(split_complex(forest).complex_vertices.empty());
}

TEST_CASE("core_of") {
  auto e = k4_edges();
  e.insert(e.end(), {{4, 5}, {5, 6}, {6, 7}});
  Graph core = core_of(Graph(7, e));
  CHECK(core.m() == 6);
  for (int v = 5; v <= 7; ++v) CHECK(core.degree(v) == 0);
  CHECK(core_of(theta()) == theta());
  Graph k4(4, k4_edges());
  CHECK(core_of(k4) == k4);
  CHECK_THROWS_AS(core_of(Graph(3, {{1, 2}, {2, 3}, {1, 3}})), ContractViolation);
}

TEST_CASE("kernel_of: theta, figure-eight, K4") {
  auto t = kernel_of(theta());
  CHECK(t.kernel.n() == 2);
  CHECK(t.kernel.m() == 3);
  CHECK(sorted(t.subdivision) == std::vector<int>{0, 1, 1});
  CHECK(t.vertex_map == std::vector<int>{1, 2});

  auto f = kernel_of(figure_eight());
  CHECK(f.kernel.n() == 1);
  CHECK(f.kernel.m() == 2);
  for (const auto& [u, v] : f.kernel.edges()) CHECK(u == v);
  CHECK(sorted(f.subdivision) == std::vector<int>{2, 2});

  auto k = kernel_of(Graph(4, k4_edges()));
  CHECK(k.kernel.m() == 6);
  CHECK(std::all_of(k.subdivision.begin(), k.subdivision.end(), [](int s) { return s == 0; }));
}

TEST_CASE("kernel_of rejects non-cores") {
  CHECK_THROWS_AS(kernel_of(Graph(3, {{1, 2}, {2, 3}})), ContractViolation);
  // A bare cycle has no vertex of degree 3.
  CHECK_THROWS_AS(kernel_of(Graph(3, {{1, 2}, {2, 3}, {1, 3}})), ContractViolation);
}

TEST_CASE("rebuild_core inverts kernel_of") {
  MultiGraph k4(4, k4_edges());
  std::vector<std::vector<int>> empty(6);
  CHECK(rebuild_core(k4, empty, {1, 2, 3, 4}) == Graph(4, k4_edges()));

  MultiGraph th(2, {{1, 2}, {1, 2}, {1, 2}});
  CHECK(rebuild_core(th, {{}, {3}, {4}}, {1, 2}) == theta());

  MultiGraph f8(1, {{1, 1}, {1, 1}});
  CHECK(rebuild_core(f8, {{2, 3}, {4, 5}}, {1}) == figure_eight());

  CHECK_THROWS_AS(rebuild_core(th, {{}, {3}, {3}}, {1, 2}), ContractViolation);
  CHECK_THROWS_AS(rebuild_core(th, {{}, {}, {4}}, {1, 2}), ContractViolation);
}

TEST_CASE("property: kernel_of . rebuild_core round trip on random cores") {
  Rng rng(17, 0);
  for (const char* name : {"K4", "theta", "figure8"}) {
    MultiGraph kernel = named_kernel(name);
    for (int rep = 0; rep < 40; ++rep) {
      // figure8 needs two subdivision vertices on each loop.
      int k = 6 + static_cast<int>(rng.below(30));
      Graph core = sample_core_given_kernel(kernel, k, 1000, rng);
      auto kr = kernel_of(core);
      CHECK(kr.kernel.n() == kernel.n());
      CHECK(kr.kernel.m() == kernel.m());
      int total = 0;
      for (int s : kr.subdivision) total += s;
      CHECK(total == k);
      CHECK(rebuild_core(kr.kernel, kr.edge_paths, kr.vertex_map, core.n()) == core);
      CHECK(kr.kernel.min_degree() >= 3);
    }
  }
}

TEST_CASE("decompose: forest") {
  Graph forest(5, {{1, 2}, {2, 3}, {4, 5}});
  auto d = decompose(forest);
  CHECK(d.complex_vertices.empty());
  CHECK(d.core.m() == 0);
  CHECK(d.kernel.kernel.n() == 0);
  CHECK(d.non_complex_part == forest);
}

TEST_CASE("decompose: K4 + pendant tree + unicyclic component") {
  auto e = k4_edges();
  e.insert(e.end(), {{4, 5}, {5, 6}, {5, 7}});            // tree hanging at 4
  e.insert(e.end(), {{8, 9}, {9, 10}, {8, 10}, {10, 11}});  // unicyclic
  Graph g(11, e);
  auto d = decompose(g);
  CHECK(d.complex_vertices == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK(d.complex_part.m() == 9);
  CHECK(d.core.m() == 6);
  CHECK(d.core_vertices == std::vector<int>{1, 2, 3, 4});
  CHECK(d.kernel.kernel.n() == 4);
  CHECK(d.kernel.kernel.m() == 6);
  CHECK(d.non_complex_vertices == std::vector<int>{8, 9, 10, 11});
  CHECK(d.non_complex_part.m() == 4);
}

TEST_CASE("decompose: two disjoint K4s") {
  auto e = k4_edges();
  auto f = k4_edges(4);
  e.insert(e.end(), f.begin(), f.end());
  auto d = decompose(Graph(8, e));
  CHECK(d.kernel.kernel.n() == 8);
  CHECK(d.kernel.kernel.m() == 12);
}

TEST_CASE("structure_stats") {
  std::vector<Edge> path;
  for (int v = 1; v < 10; ++v) path.emplace_back(v, v + 1);
  auto t = structure_stats(decompose(Graph(10, path)));
  CHECK(t.n_U == 10);
  CHECK(t.m_U == 9);
  CHECK(t.v_Q == 0);
  CHECK(t.v_L == 10);

  auto k = structure_stats(decompose(Graph(4, k4_edges())));
  CHECK(k.v_Q == 4);
  CHECK(k.v_C == 4);
  CHECK(k.v_K == 4);
  CHECK(k.e_K == 6);
  CHECK(k.n_U == 0);

  auto ki = structure_stats(decompose(Graph(5, k4_edges())));
  CHECK(ki.v_L == 4);
  CHECK(ki.n_U == 1);

  CHECK(stats_csv_header() == "n,m,n_U,m_U,v_Q,v_C,v_K,e_K,v_L,v_rest_of_Q");
  CHECK(stats_csv_row(k) == "4,6,0,0,4,4,4,6,4,0");
}

TEST_CASE("property: decomposition parts partition the graph") {
  Rng rng(3, 0);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 5 + static_cast<int>(rng.below(60));
    long long m = static_cast<long long>(rng.below(static_cast<std::uint64_t>(2 * n)));
    m = std::min<long long>(m, static_cast<long long>(n) * (n - 1) / 2);
    Graph g = sample_gnm(n, m, rng);
    auto d = decompose(g);
    CHECK(d.complex_vertices.size() + d.non_complex_vertices.size() == static_cast<std::size_t>(n));
    CHECK(d.complex_part.m() + d.non_complex_part.m() == g.m());
    for (int v : d.core_vertices) CHECK(d.core.degree(v) >= 2);
    if (!d.core_vertices.empty()) {
      CHECK(rebuild_core(d.kernel.kernel, d.kernel.edge_paths, d.kernel.vertex_map, n) == d.core);
      CHECK(d.kernel.kernel.min_degree() >= 3);
    }
  }
}
