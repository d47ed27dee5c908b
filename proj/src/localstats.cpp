#include "locallim/localstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "locallim/errors.hpp"

namespace locallim {

PlaneTree plane_code(const RootedBall& b) {
  if (!b.is_tree()) throw ContractViolation("plane_code: ball contains a cycle");
  const auto& g = b.graph;
  std::vector<int> parent(static_cast<std::size_t>(g.n()) + 1, 0);
  std::vector<int> order{b.root};
  std::vector<int> counts;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    if (b.depth[v] >= b.radius) continue;
    std::vector<int> children;
    for (int w : g.neighbors(v))
      if (w != parent[v] && b.depth[w] == b.depth[v] + 1) children.push_back(w);
    std::sort(children.begin(), children.end(),
              [&](int x, int y) { return b.labels[x] < b.labels[y]; });
    counts.push_back(static_cast<int>(children.size()));
    for (int w : children) {
      parent[w] = v;
      order.push_back(w);
    }
  }
  return PlaneTree::from_child_counts(std::move(counts), b.radius);
}

PlaneCoder::PlaneCoder(const Graph& g)
    : g_(&g),
      stamp_(static_cast<std::size_t>(g.n()) + 1, 0),
      parent_(static_cast<std::size_t>(g.n()) + 1, 0) {}

std::optional<PlaneTree> PlaneCoder::operator()(int root, int radius) {
  ++epoch_;
  order_.clear();
  order_.push_back(root);
  stamp_[root] = epoch_;
  parent_[root] = 0;
  PlaneTree t;
  t.radius = radius;
  // order_ is BFS order; depth tracked by level boundaries.
  std::size_t level_begin = 0, level_end = 1;
  for (int depth = 0; level_begin < level_end; ++depth) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      int v = order_[i];
      int children = 0;
      for (int w : g_->neighbors(v)) {
        if (w == parent_[v]) continue;
        if (stamp_[w] == epoch_) {
          // Back edge: either to an earlier vertex or within the last level.
          return std::nullopt;
        }
        if (depth < radius) {
          stamp_[w] = epoch_;
          parent_[w] = v;
          order_.push_back(w);
          ++children;
        }
      }
      if (depth < radius) t.child_counts.push_back(children);
    }
    level_begin = level_end;
    level_end = order_.size();
    if (depth >= radius) break;
  }
  t.size = static_cast<int>(order_.size());
  return t;
}

long long census(const Graph& g, int radius, const PlaneTree& t) {
  PlaneCoder coder(g);
  long long count = 0;
  for (int v = 1; v <= g.n(); ++v) {
    auto code = coder(v, radius);
    if (code && *code == t) ++count;
  }
  return count;
}

std::map<PlaneTree, long long> plane_census(const Graph& g, int radius) {
  PlaneCoder coder(g);
  std::map<PlaneTree, long long> out;
  for (int v = 1; v <= g.n(); ++v)
    if (auto code = coder(v, radius)) ++out[*code];
  return out;
}

std::vector<int> policy_targets(const Graph& g, RootPolicy policy) {
  std::vector<int> out;
  switch (policy) {
    case RootPolicy::uniform:
      out.resize(static_cast<std::size_t>(g.n()));
      for (int v = 1; v <= g.n(); ++v) out[v - 1] = v;
      return out;
    case RootPolicy::largest_component:
    case RootPolicy::rest: {
      if (g.n() == 0) return out;
      auto largest = largest_component(g);
      if (policy == RootPolicy::largest_component) return largest;
      std::vector<char> in(static_cast<std::size_t>(g.n()) + 1, 0);
      for (int v : largest) in[v] = 1;
      for (int v = 1; v <= g.n(); ++v)
        if (!in[v]) out.push_back(v);
      return out;
    }
    case RootPolicy::complex_part:
    case RootPolicy::non_complex_part: {
      auto split = split_complex(g);
      return policy == RootPolicy::complex_part ? split.complex_vertices
                                                : split.non_complex_vertices;
    }
    case RootPolicy::core:
    case RootPolicy::kernel: {
      auto split = split_complex(g);
      if (split.complex_vertices.empty()) return out;
      Graph core = core_of(split.complex_part);
      if (policy == RootPolicy::core) {
        for (int v = 1; v <= core.n(); ++v)
          if (core.degree(v) > 0) out.push_back(v);
        return out;
      }
      for (int v = 1; v <= core.n(); ++v)
        if (core.degree(v) >= 3) out.push_back(v);
      return out;
    }
  }
  return out;
}

void EmpiricalDist::add(const BallCode& code, std::int64_t count) {
  counts[code] += count;
  total += count;
}

void EmpiricalDist::merge(const EmpiricalDist& other) {
  for (const auto& [code, c] : other.counts) counts[code] += c;
  total += other.total;
  skipped += other.skipped;
}

bool accumulate(EmpiricalDist& dist, const Graph& g, RootPolicy policy, int radius, Rng& rng,
                RootMode mode, int size_limit) {
  auto targets = policy_targets(g, policy);
  if (targets.empty()) {
    ++dist.skipped;
    return false;
  }
  BallExtractor extract(g);
  auto record = [&](int root) {
    auto b = extract(root, radius);
    try {
      dist.add(ball_code(b, size_limit));
    } catch (const OversizeError&) {
      dist.add(BallCode::oversize());
    }
  };
  if (mode == RootMode::one) {
    record(targets[rng.below(targets.size())]);
  } else {
    for (int v : targets) record(v);
  }
  return true;
}

EmpiricalDist empirical_dist(std::span<const Graph> samples, RootPolicy policy, int radius,
                             Rng& rng, RootMode mode) {
  EmpiricalDist dist;
  dist.provenance.policy = root_policy_name(policy);
  dist.provenance.radius = radius;
  dist.provenance.seed = rng.seed();
  for (const auto& g : samples) accumulate(dist, g, policy, radius, rng, mode);
  if (dist.total == 0)
    throw EmptyClassError("empirical_dist: every sample had an empty root target set");
  return dist;
}

LimitDist normalized(const EmpiricalDist& d) {
  if (d.total <= 0) throw ContractViolation("normalized: distribution has no samples");
  LimitDist out;
  out.origin = {DistOrigin::Kind::monte_carlo, d.total, d.provenance.seed,
                d.provenance.sampler + " " + d.provenance.policy};
  for (const auto& [code, count] : d.counts)
    out.mass[code] = static_cast<double>(count) / static_cast<double>(d.total);
  return out;
}

double tv_distance(const LimitDist& a, const LimitDist& b) {
  double sum = 0.0;
  auto ia = a.mass.begin();
  auto ib = b.mass.begin();
  while (ia != a.mass.end() || ib != b.mass.end()) {
    if (ib == b.mass.end() || (ia != a.mass.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.mass.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  sum += std::abs(a.leftover - b.leftover);
  return std::min(1.0, 0.5 * sum);
}

double tv_distance(const EmpiricalDist& a, const LimitDist& b) {
  return tv_distance(normalized(a), b);
}

double tv_distance(const EmpiricalDist& a, const EmpiricalDist& b) {
  return tv_distance(normalized(a), normalized(b));
}

std::string to_json(const EmpiricalDist& d) {
  using nlohmann::ordered_json;
  std::vector<std::pair<const BallCode*, std::int64_t>> entries;
  for (const auto& [code, c] : d.counts) entries.emplace_back(&code, c);
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  ordered_json j;
  j["origin"] = {{"kind", "monte-carlo"}, {"samples", d.total}, {"seed", d.provenance.seed},
                 {"description", d.provenance.sampler}};
  j["leftover"] = 0.0;
  ordered_json arr = ordered_json::array();
  for (const auto& [code, c] : entries)
    arr.push_back({{"code", code->hex()},
                   {"prob", static_cast<double>(c) / static_cast<double>(std::max<std::int64_t>(d.total, 1))},
                   {"count", c}});
  j["entries"] = std::move(arr);
  j["provenance"] = {{"sampler", d.provenance.sampler},   {"parameters", d.provenance.parameters},
                     {"seed", d.provenance.seed},         {"policy", d.provenance.policy},
                     {"radius", d.provenance.radius},     {"total", d.total},
                     {"skipped", d.skipped}};
  return j.dump(2);
}

std::string to_csv(const EmpiricalDist& d) {
  std::string out = "code,count,frequency\n";
  char buf[64];
  for (const auto& [code, c] : d.counts) {
    std::snprintf(buf, sizeof buf, ",%lld,%.9g\n", static_cast<long long>(c),
                  static_cast<double>(c) / static_cast<double>(std::max<std::int64_t>(d.total, 1)));
    out += code.hex() + buf;
  }
  return out;
}

}  // namespace locallim
