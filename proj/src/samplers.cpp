#include "locallim/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "locallim/decompose.hpp"
#include "locallim/errors.hpp"
#include "locallim/planarity.hpp"

namespace locallim {

namespace {

std::vector<int> sample_pruefer(int length, int alphabet, Rng& rng) {
  std::vector<int> seq(static_cast<std::size_t>(std::max(length, 0)));
  for (auto& x : seq) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return seq;
}

// Pair index in [0, n(n-1)/2) -> (u, v), 1 <= u < v <= n, ordered by v then u.
Edge pair_from_index(long long idx) {
  auto v = static_cast<long long>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (v * (v - 1) / 2 > idx) --v;
  while ((v + 1) * v / 2 <= idx) ++v;
  long long u = idx - v * (v - 1) / 2;
  return {static_cast<int>(u + 1), static_cast<int>(v + 1)};
}

bool has_complex_component(const Graph& g) {
  for (const auto& comp : components(g)) {
    long long deg = 0;
    for (int v : comp) deg += g.degree(v);
    if (deg / 2 >= static_cast<long long>(comp.size()) + 1) return true;
  }
  return false;
}

void check_complex_core(const Graph& core) {
  for (int v = 1; v <= core.n(); ++v)
    if (core.degree(v) < 2)
      throw ContractViolation("core vertex " + std::to_string(v) + " has degree below 2");
  for (const auto& comp : components(core)) {
    long long deg = 0;
    for (int v : comp) deg += core.degree(v);
    if (deg / 2 < static_cast<long long>(comp.size()) + 1)
      throw ContractViolation("core component containing " + std::to_string(comp[0]) +
                              " is not complex");
  }
}

}  // namespace

std::vector<Edge> decode_pruefer(std::span<const int> seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++degree[x];
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int x : seq) {
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return edges;
}

Graph sample_cayley_tree(int n, Rng& rng) {
  if (n < 1) throw ContractViolation("sample_cayley_tree: n must be at least 1");
  if (n == 1) return Graph(1);
  auto seq = sample_pruefer(n - 2, n, rng);
  auto edges = decode_pruefer(seq);
  for (auto& [u, v] : edges) {
    ++u;
    ++v;
  }
  return Graph(n, std::move(edges));
}

RootedForest sample_forest(int n, int t, Rng& rng) {
  if (t < 1 || t > n) throw ContractViolation("sample_forest: need 1 <= t <= n");
  RootedForest out;
  out.roots = t;
  if (t == n) {
    out.graph = Graph(n);
    return out;
  }
  // Symbol 0 is the super-root; symbol j >= 1 stands for vertex t + j.
  // Drawing u in [0, n) and mapping u < t to the super-root gives it
  // weight t against weight 1 for every other symbol.
  const int symbols = n - t + 1;
  std::vector<int> seq(static_cast<std::size_t>(symbols - 2));
  for (auto& x : seq) {
    auto u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    x = u < t ? 0 : u - t + 1;
  }
  auto tree = decode_pruefer(seq);
  std::vector<Edge> edges;
  edges.reserve(tree.size());
  for (auto [a, b] : tree) {
    if (a == 0 || b == 0) {
      int other = a == 0 ? b : a;
      int root = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
      edges.emplace_back(root, t + other);
    } else {
      edges.emplace_back(t + a, t + b);
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

PlaneTree sample_gw_ball(double c, int radius, Rng& rng) {
  if (c < 0) throw ContractViolation("sample_gw_ball: c must be non-negative");
  if (radius < 0) throw ContractViolation("sample_gw_ball: negative radius");
  PlaneTree t;
  t.radius = radius;
  std::poisson_distribution<int> offspring(c > 0 ? c : 1.0);
  long long level = 1;
  for (int depth = 0; depth < radius && level > 0; ++depth) {
    long long next = 0;
    for (long long i = 0; i < level; ++i) {
      int d = c > 0 ? offspring(rng) : 0;
      t.child_counts.push_back(d);
      next += d;
    }
    t.size += static_cast<int>(next);
    level = next;
  }
  return t;
}

std::optional<std::int64_t> sample_gw_total(double c, std::int64_t cap, Rng& rng) {
  if (c < 0 || c > 1) throw ContractViolation("sample_gw_total: need 0 <= c <= 1");
  if (cap < 1) throw ContractViolation("sample_gw_total: cap must be at least 1");
  if (c == 0) return 1;
  // A generation of g vertices has Poisson(c g) children in total.
  std::int64_t total = 1, generation = 1;
  while (generation > 0) {
    std::poisson_distribution<std::int64_t> children(c * static_cast<double>(generation));
    generation = children(rng);
    total += generation;
    if (total > cap) return std::nullopt;
  }
  return total;
}

Graph plane_tree_graph(const PlaneTree& t) {
  auto parent = t.parents();
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < parent.size(); ++i)
    edges.emplace_back(parent[i] + 1, static_cast<int>(i) + 1);
  return Graph(static_cast<int>(parent.size()), std::move(edges));
}

RootedBall sample_skeleton_ball(int k, int radius, Rng& rng) {
  if (k < 0) throw ContractViolation("sample_skeleton_ball: k must be non-negative");
  if (radius < 0) throw ContractViolation("sample_skeleton_ball: negative radius");
  std::vector<Edge> edges;
  int next_label = 1;
  auto graft = [&](int at, int depth_left) {
    auto tree = sample_gw_ball(1.0, depth_left, rng);
    auto parent = tree.parents();
    std::vector<int> label(parent.size());
    label[0] = at;
    for (std::size_t i = 1; i < parent.size(); ++i) {
      label[i] = ++next_label;
      edges.emplace_back(label[parent[i]], label[i]);
    }
  };
  const int root = 1;
  graft(root, radius);
  for (int ray = 0; ray < k; ++ray) {
    int prev = root;
    for (int j = 1; j <= radius; ++j) {
      int v = ++next_label;
      edges.emplace_back(prev, v);
      graft(v, radius - j);
      prev = v;
    }
  }
  Graph g(next_label, std::move(edges));
  return ball(g, root, radius);
}

Graph sample_gnm(int n, long long m, Rng& rng) {
  if (n < 0) throw ContractViolation("sample_gnm: negative n");
  const long long universe = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > universe)
    throw ContractViolation("sample_gnm: m=" + std::to_string(m) + " outside 0.." +
                            std::to_string(universe));
  // Partial Fisher-Yates over pair indices; the swap map stores only
  // positions that differ from the identity.
  std::unordered_map<long long, long long> swapped;
  swapped.reserve(static_cast<std::size_t>(2 * m));
  auto at = [&](long long i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long j = i + static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe - i)));
    long long vj = at(j), vi = at(i);
    swapped[j] = vi;
    swapped[i] = vj;
    edges.push_back(pair_from_index(vj));
  }
  return Graph(n, std::move(edges));
}

Graph sample_noncomplex(int n, long long m, std::int64_t max_tries, Rng& rng) {
  if (n < 1) throw ContractViolation("sample_noncomplex: n must be at least 1");
  for (std::int64_t attempt = 1; attempt <= max_tries; ++attempt) {
    Graph g = sample_gnm(n, m, rng);
    if (!has_complex_component(g)) return g;
  }
  throw BudgetError("sample_noncomplex: no graph without complex components after " +
                        std::to_string(max_tries) + " tries",
                    max_tries);
}

Graph sample_complexpart(const Graph& core, int q, Rng& rng) {
  if (core.n() < 1) throw ContractViolation("sample_complexpart: empty core");
  if (core.n() > q) throw ContractViolation("sample_complexpart: v(core) exceeds q");
  check_complex_core(core);
  auto forest = sample_forest(q, core.n(), rng);
  std::vector<Edge> edges = forest.graph.edges();
  edges.insert(edges.end(), core.edges().begin(), core.edges().end());
  return Graph(q, std::move(edges));
}

Graph sample_core_given_kernel(const MultiGraph& kernel, int k, std::int64_t max_tries,
                               Rng& rng) {
  if (kernel.n() < 1) throw ContractViolation("sample_core_given_kernel: empty kernel");
  if (kernel.min_degree() < 3)
    throw ContractViolation("sample_core_given_kernel: kernel has a vertex of degree below 3");
  if (k < 0) throw ContractViolation("sample_core_given_kernel: negative k");
  const int e = static_cast<int>(kernel.m());
  const int base = kernel.n();

  // Parallel classes by endpoint pair (loops have u == v).
  std::vector<int> class_of(static_cast<std::size_t>(e));
  {
    std::vector<Edge> keys(kernel.edges());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int i = 0; i < e; ++i)
      class_of[i] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), kernel.edges()[i]) -
                                     keys.begin());
  }
  std::vector<int> labels(static_cast<std::size_t>(k));
  std::vector<int> lengths(static_cast<std::size_t>(e));
  std::vector<int> bare_in_class(static_cast<std::size_t>(e));
  for (std::int64_t attempt = 1; attempt <= max_tries; ++attempt) {
    // Uniform arrangement of k labelled vertices into e ordered sequences:
    // a uniform permutation cut by a uniform weak composition (stars and
    // bars). This is the law of inserting vertex i into one of e+i-1 gaps.
    for (int i = 0; i < k; ++i) labels[i] = base + 1 + i;
    for (int i = k - 1; i > 0; --i)
      std::swap(labels[i], labels[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    const int slots = k + e - 1;
    std::vector<int> bars;
    {
      // Floyd's algorithm for a uniform (e-1)-subset of [0, slots).
      std::unordered_set<int> chosen;
      for (int j = slots - (e - 1); j < slots; ++j) {
        int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(r).second) chosen.insert(j);
      }
      bars.assign(chosen.begin(), chosen.end());
      std::sort(bars.begin(), bars.end());
    }
    int prev = -1;
    for (int i = 0; i < e - 1; ++i) {
      lengths[i] = bars[i] - prev - 1;
      prev = bars[i];
    }
    lengths[e - 1] = slots - prev - 1;

    bool simple = true;
    std::fill(bare_in_class.begin(), bare_in_class.end(), 0);
    for (int i = 0; i < e && simple; ++i) {
      auto [u, v] = kernel.edges()[i];
      if (u == v) {
        simple = lengths[i] >= 2;
      } else if (lengths[i] == 0) {
        simple = ++bare_in_class[class_of[i]] <= 1;
      }
    }
    if (!simple) continue;

    std::vector<std::vector<int>> paths(static_cast<std::size_t>(e));
    int pos = 0;
    for (int i = 0; i < e; ++i) {
      paths[i].assign(labels.begin() + pos, labels.begin() + pos + lengths[i]);
      pos += lengths[i];
    }
    std::vector<int> identity(static_cast<std::size_t>(base));
    for (int i = 0; i < base; ++i) identity[i] = i + 1;
    return rebuild_core(kernel, paths, identity, base + k);
  }
  throw BudgetError("sample_core_given_kernel: no simple core after " +
                        std::to_string(max_tries) + " tries",
                    max_tries);
}

Graph planar_start_state(int n, long long m) {
  if (m < 0 || m > max_planar_edges(n))
    throw ContractViolation("planar_start_state: m outside 0..max planar edges");
  // Prefix of K2 + path, a maximal planar graph when n >= 3.
  std::vector<Edge> edges;
  if (n >= 2) edges.emplace_back(1, 2);
  for (int i = 3; i <= n; ++i) {
    edges.emplace_back(1, i);
    edges.emplace_back(2, i);
    if (i >= 4) edges.emplace_back(i - 1, i);
  }
  edges.resize(static_cast<std::size_t>(m));
  return Graph(n, std::move(edges));
}

PlanarSample planar_mcmc_steps(const Graph& state, std::int64_t steps, Rng& rng) {
  const int n = state.n();
  const long long m = static_cast<long long>(state.m());
  const long long universe = static_cast<long long>(n) * (n - 1) / 2;
  PlanarSample out;
  out.approximate = true;
  if (m == 0 || m == universe) {
    out.graph = state;
    return out;
  }
  std::vector<Edge> edges = state.edges();
  auto key = [n](Edge e) { return static_cast<long long>(e.first) * (n + 1) + e.second; };
  std::unordered_set<long long> present;
  present.reserve(static_cast<std::size_t>(2 * m));
  for (auto e : edges) present.insert(key(e));
  std::vector<int> root(static_cast<std::size_t>(n) + 1);
  auto find = [&root](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (std::int64_t step = 0; step < steps; ++step) {
    auto idx = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m)));
    Edge added;
    do {
      added = pair_from_index(static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe))));
    } while (present.count(key(added)));
    Edge removed = edges[idx];
    // An edge joining two components of the remaining graph keeps it planar.
    std::iota(root.begin(), root.end(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (i != idx) root[find(edges[i].first)] = find(edges[i].second);
    const bool bridge = find(added.first) != find(added.second);
    edges[idx] = added;
    if (bridge || is_planar(n, edges)) {
      present.erase(key(removed));
      present.insert(key(added));
      ++out.accepted_moves;
    } else {
      edges[idx] = removed;
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

PlanarSample sample_planar(int n, long long m, PlanarMethod method, std::int64_t budget,
                           Rng& rng) {
  const long long universe = static_cast<long long>(n) * (n - 1) / 2;
  if (n < 0 || m < 0 || m > universe)
    throw ContractViolation("sample_planar: m=" + std::to_string(m) + " outside 0.." +
                            std::to_string(universe));
  if (m > max_planar_edges(n))
    throw EmptyClassError("sample_planar: no planar graph on " + std::to_string(n) +
                          " vertices has " + std::to_string(m) + " edges");
  if (method == PlanarMethod::mcmc) return planar_mcmc_steps(planar_start_state(n, m), budget, rng);
  for (std::int64_t attempt = 1; attempt <= budget; ++attempt) {
    Graph g = sample_gnm(n, m, rng);
    if (is_planar(g)) return {std::move(g), false, 0};
  }
  throw BudgetError("sample_planar: no planar graph after " + std::to_string(budget) + " tries",
                    budget);
}

}  // namespace locallim
