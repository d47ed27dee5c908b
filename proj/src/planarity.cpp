#include "locallim/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <vector>

namespace locallim {

long long max_planar_edges(int n) {
  if (n <= 2) return static_cast<long long>(n) * (n - 1) / 2;
  return 3LL * n - 6;
}

bool is_planar(int n, std::span<const Edge> edges) {
  if (n <= 4) return true;
  if (static_cast<long long>(edges.size()) > max_planar_edges(n)) return false;

  // Prune pendant trees; planarity is decided by the 2-core.
  std::vector<int> offsets(static_cast<std::size_t>(n) + 2, 0);
  for (auto [u, v] : edges) {
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (int v = 1; v <= n + 1; ++v) offsets[v] += offsets[v - 1];
  std::vector<int> adj(offsets[n + 1]);
  {
    std::vector<int> fill(offsets.begin(), offsets.end() - 1);
    for (auto [u, v] : edges) {
      adj[fill[u]++] = v;
      adj[fill[v]++] = u;
    }
  }
  std::vector<int> deg(static_cast<std::size_t>(n) + 1);
  std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
  std::vector<int> stack;
  for (int v = 1; v <= n; ++v) {
    deg[v] = offsets[v + 1] - offsets[v];
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int i = offsets[v]; i < offsets[v + 1]; ++i) {
      int w = adj[i];
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  std::vector<int> local(static_cast<std::size_t>(n) + 1, -1);
  int count = 0;
  for (int v = 1; v <= n; ++v)
    if (alive[v]) local[v] = count++;
  std::size_t core_edges = 0;
  for (auto [u, v] : edges)
    if (alive[u] && alive[v]) ++core_edges;
  // A K5 or K3,3 subdivision needs at least five vertices and nine edges.
  if (count <= 4 || core_edges < 9) return true;

  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                           boost::property<boost::vertex_index_t, int>,
                                           boost::property<boost::edge_index_t, int>>;
  BoostGraph bg(count);
  for (auto [u, v] : edges)
    if (alive[u] && alive[v]) boost::add_edge(local[u], local[v], bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

bool is_planar(const Graph& g) { return is_planar(g.n(), g.edges()); }

}  // namespace locallim
