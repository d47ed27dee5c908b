#include "locallim/decompose.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "locallim/errors.hpp"

namespace locallim {

ComplexSplit split_complex(const Graph& g) {
  ComplexSplit out;
  for (const auto& comp : components(g)) {
    long long degree_sum = 0;
    for (int v : comp) degree_sum += g.degree(v);
    const long long e = degree_sum / 2;
    auto& target = e >= static_cast<long long>(comp.size()) + 1 ? out.complex_vertices
                                                                  : out.non_complex_vertices;
    target.insert(target.end(), comp.begin(), comp.end());
  }
  std::sort(out.complex_vertices.begin(), out.complex_vertices.end());
  std::sort(out.non_complex_vertices.begin(), out.non_complex_vertices.end());
  out.complex_part = induced_subgraph(g, out.complex_vertices);
  out.non_complex_part = induced_subgraph(g, out.non_complex_vertices);
  return out;
}

Graph core_of(const Graph& q) {
  for (const auto& comp : components(q)) {
    if (comp.size() == 1 && q.degree(comp[0]) == 0) continue;
    long long degree_sum = 0;
    for (int v : comp) degree_sum += q.degree(v);
    if (degree_sum / 2 < static_cast<long long>(comp.size()) + 1)
      throw ContractViolation("core_of: component containing vertex " + std::to_string(comp[0]) +
                              " is not complex");
  }
  const int n = q.n();
  std::vector<int> deg(static_cast<std::size_t>(n) + 1);
  std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
  std::vector<int> stack;
  for (int v = 1; v <= n; ++v) {
    deg[v] = q.degree(v);
    if (deg[v] == 1) stack.push_back(v);
    if (deg[v] == 0) alive[v] = 0;
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int w : q.neighbors(v))
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
  }
  std::vector<int> kept;
  for (int v = 1; v <= n; ++v)
    if (alive[v]) kept.push_back(v);
  return induced_subgraph(q, kept);
}

KernelResult kernel_of(const Graph& c) {
  const int n = c.n();
  for (int v = 1; v <= n; ++v) {
    if (c.degree(v) == 1)
      throw ContractViolation("kernel_of: vertex " + std::to_string(v) + " has degree 1");
  }
  for (const auto& comp : components(c)) {
    if (comp.size() == 1 && c.degree(comp[0]) == 0) continue;
    bool branch = std::any_of(comp.begin(), comp.end(), [&](int v) { return c.degree(v) >= 3; });
    if (!branch)
      throw ContractViolation("kernel_of: component containing vertex " +
                              std::to_string(comp[0]) + " is a bare cycle");
  }

  KernelResult out;
  std::vector<int> kid(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    if (c.degree(v) >= 3) {
      out.vertex_map.push_back(v);
      kid[v] = static_cast<int>(out.vertex_map.size());
    }
  }
  std::vector<Edge> kernel_edges;
  for (int u : out.vertex_map) {
    for (int first : c.neighbors(u)) {
      std::vector<int> interior;
      int prev = u, cur = first;
      while (c.degree(cur) == 2) {
        interior.push_back(cur);
        auto nb = c.neighbors(cur);
        int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      const int x = cur;
      bool keep = u < x || (u == x && interior.front() < interior.back());
      if (!keep) continue;
      kernel_edges.emplace_back(kid[u], kid[x]);
      out.subdivision.push_back(static_cast<int>(interior.size()));
      out.edge_paths.push_back(std::move(interior));
    }
  }
  out.kernel = MultiGraph(static_cast<int>(out.vertex_map.size()), std::move(kernel_edges));
  return out;
}

Graph rebuild_core(const MultiGraph& kernel, const std::vector<std::vector<int>>& edge_paths,
                   const std::vector<int>& vertex_map, int n) {
  if (edge_paths.size() != kernel.m())
    throw ContractViolation("rebuild_core: one path per kernel edge required");
  if (vertex_map.size() != static_cast<std::size_t>(kernel.n()))
    throw ContractViolation("rebuild_core: vertex_map size differs from kernel order");
  int max_label = 0;
  for (int v : vertex_map) max_label = std::max(max_label, v);
  for (const auto& path : edge_paths)
    for (int v : path) max_label = std::max(max_label, v);
  if (n == 0) n = max_label;
  if (max_label > n) throw ContractViolation("rebuild_core: label exceeds universe");

  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (int v : vertex_map) {
    if (v < 1 || used[v]) throw ContractViolation("rebuild_core: inconsistent kernel labels");
    used[v] = 1;
  }
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < kernel.m(); ++id) {
    auto [a, b] = kernel.edges()[id];
    int prev = vertex_map[a - 1];
    for (int v : edge_paths[id]) {
      if (v < 1 || used[v])
        throw ContractViolation("rebuild_core: interior vertex " + std::to_string(v) +
                                " reused or a kernel vertex");
      used[v] = 1;
      edges.emplace_back(prev, v);
      prev = v;
    }
    edges.emplace_back(prev, vertex_map[b - 1]);
  }
  return Graph(n, std::move(edges));
}

Decomposition decompose(const Graph& g) {
  Decomposition d;
  d.n = g.n();
  auto split = split_complex(g);
  d.complex_part = std::move(split.complex_part);
  d.non_complex_part = std::move(split.non_complex_part);
  d.complex_vertices = std::move(split.complex_vertices);
  d.non_complex_vertices = std::move(split.non_complex_vertices);
  d.core = core_of(d.complex_part);
  for (int v = 1; v <= d.core.n(); ++v)
    if (d.core.degree(v) > 0) d.core_vertices.push_back(v);
  d.kernel = kernel_of(d.core);
  if (g.n() > 0) d.largest = largest_component(g);
  return d;
}

StructureStats structure_stats(const Decomposition& d) {
  StructureStats s;
  s.n = d.n;
  s.m = static_cast<long long>(d.complex_part.m() + d.non_complex_part.m());
  s.n_U = static_cast<long long>(d.non_complex_vertices.size());
  s.m_U = static_cast<long long>(d.non_complex_part.m());
  s.v_Q = static_cast<long long>(d.complex_vertices.size());
  s.v_C = static_cast<long long>(d.core_vertices.size());
  s.v_K = d.kernel.kernel.n();
  s.e_K = static_cast<long long>(d.kernel.kernel.m());
  s.v_L = static_cast<long long>(d.largest.size());
  if (s.v_Q > 0) {
    // Complex components have at least four vertices, so they sort ahead of
    // the isolated non-complex labels in the shared universe.
    s.v_rest_of_Q = s.v_Q - static_cast<long long>(components(d.complex_part).front().size());
  }
  return s;
}

std::string stats_csv_header() { return "n,m,n_U,m_U,v_Q,v_C,v_K,e_K,v_L,v_rest_of_Q"; }

std::string stats_csv_row(const StructureStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld", s.n, s.m,
                s.n_U, s.m_U, s.v_Q, s.v_C, s.v_K, s.e_K, s.v_L, s.v_rest_of_Q);
  return buf;
}

std::string decomposition_json(const Decomposition& d) {
  using nlohmann::json;
  auto edges = [](const auto& g) {
    json arr = json::array();
    for (auto [u, v] : g.edges()) arr.push_back({u, v});
    return arr;
  };
  json j;
  j["n"] = d.n;
  j["complex_part"] = {{"vertices", d.complex_vertices}, {"edges", edges(d.complex_part)}};
  j["non_complex_part"] = {{"vertices", d.non_complex_vertices},
                           {"edges", edges(d.non_complex_part)}};
  j["core"] = {{"vertices", d.core_vertices}, {"edges", edges(d.core)}};
  j["kernel"] = {{"n", d.kernel.kernel.n()}, {"edges", edges(d.kernel.kernel)}};
  j["kernel_vertex_map"] = d.kernel.vertex_map;
  j["edge_paths"] = d.kernel.edge_paths;
  j["subdivision"] = d.kernel.subdivision;
  j["largest"] = d.largest;
  return j.dump(2);
}

}  // namespace locallim
