#include "locallim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>

#include "locallim/errors.hpp"

namespace locallim {

namespace {

void build_csr(int n, const std::vector<Edge>& edges, std::vector<int>& offsets,
               std::vector<int>& adj) {
  offsets.assign(static_cast<std::size_t>(n) + 2, 0);
  for (auto [u, v] : edges) {
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (int v = 1; v <= n + 1; ++v) offsets[v] += offsets[v - 1];
  adj.assign(offsets[n + 1], 0);
  std::vector<int> fill(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : edges) {
    adj[fill[u]++] = v;
    adj[fill[v]++] = u;
  }
  for (int v = 1; v <= n; ++v)
    std::sort(adj.begin() + offsets[v], adj.begin() + offsets[v + 1]);
}

// Splits into whitespace-separated integer tokens; nullopt on junk.
std::optional<std::vector<long long>> int_tokens(std::string_view line) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc{} || ptr != line.data() + j) return std::nullopt;
    out.push_back(value);
    i = j;
  }
  return out;
}

bool is_skippable(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

struct RawEdgeList {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;
};

RawEdgeList parse_raw(std::string_view text) {
  RawEdgeList out;
  long long expected = -1;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (is_skippable(line)) {
      if (end == text.size()) break;
      continue;
    }
    auto tokens = int_tokens(line);
    if (!tokens || tokens->size() != 2) throw ParseError(line_no, "expected two integers");
    if (expected < 0) {
      if ((*tokens)[0] < 0 || (*tokens)[1] < 0) throw ParseError(line_no, "negative header value");
      if ((*tokens)[0] > 100'000'000) throw ParseError(line_no, "vertex count too large");
      out.n = static_cast<int>((*tokens)[0]);
      expected = (*tokens)[1];
    } else {
      if (static_cast<long long>(out.edges.size()) == expected)
        throw ParseError(line_no, "more edge lines than declared");
      auto u = (*tokens)[0], v = (*tokens)[1];
      if (u < 1 || v < 1 || u > out.n || v > out.n)
        throw ParseError(line_no, "vertex label out of range 1.." + std::to_string(out.n));
      out.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
      out.edge_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (expected < 0) throw ParseError(line_no, "missing header line \"n m\"");
  if (static_cast<long long>(out.edges.size()) != expected)
    throw ParseError(line_no, "expected " + std::to_string(expected) + " edges, found " +
                                  std::to_string(out.edges.size()));
  return out;
}

}  // namespace

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ContractViolation("negative vertex count");
  for (auto& [u, v] : edges_) {
    if (u < 1 || v < 1 || u > n || v > n)
      throw ContractViolation("edge {" + std::to_string(u) + "," + std::to_string(v) +
                              "} has an endpoint outside 1.." + std::to_string(n));
    if (u == v) throw ContractViolation("loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw ContractViolation("duplicate edge {" + std::to_string(dup->first) + "," +
                            std::to_string(dup->second) + "}");
  build_csr(n_, edges_, offsets_, adj_);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 1 || v < 1 || u > n_ || v > n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

MultiGraph::MultiGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), degree_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0) throw ContractViolation("negative vertex count");
  for (auto& [u, v] : edges_) {
    if (u < 1 || v < 1 || u > n || v > n)
      throw ContractViolation("multigraph edge endpoint outside 1.." + std::to_string(n));
    if (u > v) std::swap(u, v);
    ++degree_[u];
    ++degree_[v];
  }
}

int MultiGraph::min_degree() const {
  if (n_ == 0) return 0;
  return *std::min_element(degree_.begin() + 1, degree_.end());
}

Graph parse_graph(std::string_view text) {
  auto raw = parse_raw(text);
  std::vector<std::pair<Edge, int>> seen;
  seen.reserve(raw.edges.size());
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    auto [u, v] = raw.edges[i];
    if (u == v) throw ParseError(raw.edge_lines[i], "loop at vertex " + std::to_string(u));
    if (u > v) throw ParseError(raw.edge_lines[i], "endpoints must satisfy u < v");
    seen.push_back({raw.edges[i], raw.edge_lines[i]});
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first)
      throw ParseError(std::max(seen[i].second, seen[i - 1].second), "duplicate edge");
  }
  return Graph(raw.n, std::move(raw.edges));
}

MultiGraph parse_multigraph(std::string_view text) {
  auto raw = parse_raw(text);
  return MultiGraph(raw.n, std::move(raw.edges));
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

std::string to_edge_list(const MultiGraph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.n()) + 1, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 1; s <= g.n(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  // Discovery order already sorts by smallest label; stable sort keeps it.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

std::vector<int> largest_component(const Graph& g) {
  if (g.n() < 1) throw ContractViolation("largest_component of an empty graph");
  return components(g).front();
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()) + 1, -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<int> distance(const Graph& g, int u, int v) {
  if (u < 1 || v < 1 || u > g.n() || v > g.n()) throw ContractViolation("vertex out of range");
  int d = bfs_distances(g, u)[v];
  if (d < 0) return std::nullopt;
  return d;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<char> keep(static_cast<std::size_t>(g.n()) + 1, 0);
  for (int v : vertices) keep[v] = 1;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (keep[u] && keep[v]) edges.emplace_back(u, v);
  return Graph(g.n(), std::move(edges));
}

BallExtractor::BallExtractor(const Graph& g)
    : g_(&g),
      stamp_(static_cast<std::size_t>(g.n()) + 1, 0),
      dist_(static_cast<std::size_t>(g.n()) + 1, 0),
      local_(static_cast<std::size_t>(g.n()) + 1, 0) {}

const std::vector<int>& BallExtractor::reach(int root, int radius) {
  if (root < 1 || root > g_->n()) throw ContractViolation("ball root out of range");
  if (radius < 0) throw ContractViolation("negative ball radius");
  ++epoch_;
  order_.clear();
  order_.push_back(root);
  stamp_[root] = epoch_;
  dist_[root] = 0;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    int v = order_[head];
    if (dist_[v] == radius) continue;
    for (int w : g_->neighbors(v)) {
      if (stamp_[w] != epoch_) {
        stamp_[w] = epoch_;
        dist_[w] = dist_[v] + 1;
        order_.push_back(w);
      }
    }
  }
  std::sort(order_.begin(), order_.end(), [this](int a, int b) {
    return dist_[a] != dist_[b] ? dist_[a] < dist_[b] : a < b;
  });
  return order_;
}

RootedBall BallExtractor::operator()(int root, int radius) {
  const auto& verts = reach(root, radius);
  const int b = static_cast<int>(verts.size());
  RootedBall out;
  out.radius = radius;
  out.depth.assign(static_cast<std::size_t>(b) + 1, 0);
  out.labels.assign(static_cast<std::size_t>(b) + 1, 0);
  for (int i = 0; i < b; ++i) {
    local_[verts[i]] = i + 1;
    out.depth[i + 1] = dist_[verts[i]];
    out.labels[i + 1] = verts[i];
  }
  std::vector<Edge> edges;
  for (int i = 0; i < b; ++i) {
    int v = verts[i];
    for (int w : g_->neighbors(v)) {
      if (w > v && stamp_[w] == epoch_) edges.emplace_back(local_[v], local_[w]);
    }
  }
  out.graph = Graph(b, std::move(edges));
  return out;
}

RootedBall ball(const Graph& g, int v, int radius) {
  BallExtractor extract(g);
  return extract(v, radius);
}

}  // namespace locallim
