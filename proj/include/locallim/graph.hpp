#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locallim {

using Edge = std::pair<int, int>;

/// Simple labelled graph on vertices 1..n.
///
/// Immutable after construction. Edges are stored normalised (u < v) and
/// sorted lexicographically; adjacency lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws ContractViolation on loops, duplicates or labels outside 1..n.
  Graph(int n, std::vector<Edge> edges);

  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_ = {0, 0};
  std::vector<int> adj_;
};

/// Multigraph on 1..n; loops and repeated edges allowed. An edge's id is
/// its index in edges(). A loop adds 2 to the degree of its vertex.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int n, std::vector<Edge> edges);

  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int degree(int v) const { return degree_[v]; }
  int min_degree() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_ = {0};
};

/// Induced ball around a root, relabelled 1..b by (depth, original label).
/// The root is always vertex 1.
struct RootedBall {
  Graph graph;
  int root = 1;
  int radius = 0;
  std::vector<int> depth;   // depth[v], v in 1..b; depth[0] unused
  std::vector<int> labels;  // original label of ball vertex v; labels[0] unused

  int size() const noexcept { return graph.n(); }
  bool is_tree() const noexcept {
    return graph.m() + 1 == static_cast<std::size_t>(graph.n());
  }
};

Graph parse_graph(std::string_view text);
/// Same format as parse_graph, but loops and repeated edges are accepted
/// and the u < v ordering is not enforced.
MultiGraph parse_multigraph(std::string_view text);

std::string to_edge_list(const Graph& g);
std::string to_edge_list(const MultiGraph& g);

/// Components sorted by (size desc, smallest label asc), each sorted.
std::vector<std::vector<int>> components(const Graph& g);
std::vector<int> largest_component(const Graph& g);

/// BFS distances from `source`; -1 marks unreachable. Index 0 unused.
std::vector<int> bfs_distances(const Graph& g, int source);
std::optional<int> distance(const Graph& g, int u, int v);

/// Graph on the same label universe keeping only edges with both
/// endpoints in `vertices`.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Reusable ball extraction for many roots on one graph; avoids O(n)
/// allocation per ball. Not thread-safe; use one per worker.
class BallExtractor {
 public:
  explicit BallExtractor(const Graph& g);
  RootedBall operator()(int root, int radius);

  /// Vertices within `radius` of `root` in BFS order (depth, label).
  const std::vector<int>& reach(int root, int radius);

 private:
  const Graph* g_;
  std::vector<int> stamp_;
  std::vector<int> dist_;
  std::vector<int> local_;
  std::vector<int> order_;
  int epoch_ = 0;
};

RootedBall ball(const Graph& g, int v, int radius);

}  // namespace locallim
