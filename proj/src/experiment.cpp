#include "locallim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include <boost/math/special_functions/gamma.hpp>

#include "locallim/ball_code.hpp"
#include "locallim/decompose.hpp"
#include "locallim/errors.hpp"
#include "locallim/localstats.hpp"
#include "locallim/parallel.hpp"
#include "locallim/planarity.hpp"
#include "locallim/samplers.hpp"

namespace locallim {

using nlohmann::json;

namespace {

std::string fmt9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

template <class T>
T get_param(const json& params, const char* key, const std::string& where) {
  if (!params.contains(key)) throw ConfigError(where + ": missing parameter \"" + key + "\"");
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": parameter \"" + key + "\" has the wrong type");
  }
}

template <class T>
T param_or(const json& params, const char* key, T fallback, const std::string& where) {
  if (!params.contains(key)) return fallback;
  return get_param<T>(params, key, where);
}

PlanarMethod planar_method(const SamplerSpec& s) {
  auto m = param_or<std::string>(s.params, "method", "rejection", "planar");
  if (m == "rejection") return PlanarMethod::rejection;
  if (m == "mcmc") return PlanarMethod::mcmc;
  throw ConfigError("planar: unknown method \"" + m + "\"");
}

Graph core_for(const SamplerSpec& s) {
  return subdivided_core(named_kernel(get_param<std::string>(s.params, "kernel", s.name)),
                         param_or<int>(s.params, "subdivide", 0, s.name));
}

// Label count and edge count of every outcome of a sampler.
std::pair<int, long long> outcome_shape(const SamplerSpec& s) {
  const auto& p = s.params;
  if (s.name == "cayley") {
    int n = get_param<int>(p, "n", s.name);
    return {n, std::max(n - 1, 0)};
  }
  if (s.name == "forest") {
    int n = get_param<int>(p, "n", s.name);
    return {n, n - get_param<int>(p, "t", s.name)};
  }
  if (s.name == "gnm" || s.name == "noncomplex" || s.name == "planar")
    return {get_param<int>(p, "n", s.name), get_param<long long>(p, "m", s.name)};
  if (s.name == "complexpart") {
    Graph core = core_for(s);
    int q = get_param<int>(p, "q", s.name);
    return {q, static_cast<long long>(q - core.n()) + static_cast<long long>(core.m())};
  }
  if (s.name == "core") {
    MultiGraph kernel = named_kernel(get_param<std::string>(p, "kernel", s.name));
    int k = get_param<int>(p, "k", s.name);
    return {kernel.n() + k, static_cast<long long>(kernel.m()) + k};
  }
  throw ConfigError("unknown sampler \"" + s.name + "\"");
}

bool has_complex(const Graph& g) { return !split_complex(g).complex_vertices.empty(); }

std::vector<Edge> sorted_kernel_edges(const MultiGraph& k) {
  std::vector<Edge> e(k.edges().begin(), k.edges().end());
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

std::function<bool(const Graph&)> class_predicate(const SamplerSpec& s) {
  if (s.name == "cayley") return [](const Graph& g) { return components(g).size() == 1; };
  if (s.name == "forest") {
    int t = get_param<int>(s.params, "t", s.name);
    return [t](const Graph& g) {
      auto comps = components(g);
      if (static_cast<int>(comps.size()) != t) return false;
      // t components with n - t edges is a forest; roots must be separated.
      std::vector<int> owner(static_cast<std::size_t>(g.n()) + 1, -1);
      for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) owner[v] = static_cast<int>(i);
      std::set<int> seen;
      for (int r = 1; r <= t; ++r)
        if (!seen.insert(owner[r]).second) return false;
      return true;
    };
  }
  if (s.name == "gnm") return [](const Graph&) { return true; };
  if (s.name == "noncomplex") return [](const Graph& g) { return !has_complex(g); };
  if (s.name == "planar") return [](const Graph& g) { return is_planar(g); };
  if (s.name == "complexpart") {
    Graph core = core_for(s);
    return [core](const Graph& g) {
      auto split = split_complex(g);
      if (!split.non_complex_vertices.empty()) return false;
      Graph c = core_of(g);
      return c.edges().size() == core.edges().size() &&
             std::equal(c.edges().begin(), c.edges().end(), core.edges().begin());
    };
  }
  if (s.name == "core") {
    MultiGraph kernel = named_kernel(get_param<std::string>(s.params, "kernel", s.name));
    auto want = sorted_kernel_edges(kernel);
    return [kernel, want](const Graph& g) {
      for (int v = 1; v <= g.n(); ++v)
        if (g.degree(v) < 2) return false;
      auto split = split_complex(g);
      if (!split.non_complex_vertices.empty()) return false;
      try {
        auto kr = kernel_of(g);
        if (kr.kernel.n() != kernel.n()) return false;
        for (int i = 0; i < kernel.n(); ++i)
          if (kr.vertex_map[i] != i + 1) return false;
        return sorted_kernel_edges(kr.kernel) == want;
      } catch (const ContractViolation&) {
        return false;
      }
    };
  }
  throw ConfigError("unknown sampler \"" + s.name + "\"");
}

double log_binom_pmf(std::int64_t n, std::int64_t x, double p) {
  return std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0) +
         x * std::log(p) + (n - x) * std::log1p(-p);
}

}  // namespace

// ---------------------------------------------------------------------------

SamplerSpec sampler_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sampler spec must be an object");
  SamplerSpec s;
  s.name = get_param<std::string>(j, "sampler", "sampler spec");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "sampler") s.params[it.key()] = it.value();
  return s;
}

json to_json(const SamplerSpec& s) {
  json j = s.params;
  j["sampler"] = s.name;
  return j;
}

void validate(const SamplerSpec& s) {
  static const std::set<std::string> names{"cayley",      "forest", "gnm",   "noncomplex",
                                           "complexpart", "core",   "planar"};
  if (!names.count(s.name)) throw ConfigError("unknown sampler \"" + s.name + "\"");
  const auto& p = s.params;
  if (s.name == "cayley") {
    if (get_param<int>(p, "n", s.name) < 1) throw ContractViolation("cayley: n must be at least 1");
  } else if (s.name == "forest") {
    int n = get_param<int>(p, "n", s.name), t = get_param<int>(p, "t", s.name);
    if (t < 1 || t > n) throw ContractViolation("forest: need 1 <= t <= n");
  } else if (s.name == "gnm" || s.name == "noncomplex" || s.name == "planar") {
    int n = get_param<int>(p, "n", s.name);
    long long m = get_param<long long>(p, "m", s.name);
    long long universe = static_cast<long long>(n) * (n - 1) / 2;
    if (n < 0 || m < 0 || m > universe)
      throw ContractViolation(s.name + ": m=" + std::to_string(m) + " outside 0.." +
                              std::to_string(std::max(universe, 0LL)));
    if (s.name == "planar") planar_method(s);
  } else if (s.name == "complexpart") {
    Graph core = core_for(s);
    if (get_param<int>(p, "q", s.name) < core.n())
      throw ContractViolation("complexpart: q is smaller than the core");
  } else if (s.name == "core") {
    named_kernel(get_param<std::string>(p, "kernel", s.name));
    if (get_param<int>(p, "k", s.name) < 0) throw ContractViolation("core: negative k");
  }
}

Graph draw(const SamplerSpec& s, Rng& rng, std::int64_t max_tries) {
  const auto& p = s.params;
  if (s.name == "cayley") return sample_cayley_tree(get_param<int>(p, "n", s.name), rng);
  if (s.name == "forest")
    return sample_forest(get_param<int>(p, "n", s.name), get_param<int>(p, "t", s.name), rng).graph;
  if (s.name == "gnm")
    return sample_gnm(get_param<int>(p, "n", s.name), get_param<long long>(p, "m", s.name), rng);
  if (s.name == "noncomplex")
    return sample_noncomplex(get_param<int>(p, "n", s.name), get_param<long long>(p, "m", s.name),
                             max_tries, rng);
  if (s.name == "complexpart")
    return sample_complexpart(core_for(s), get_param<int>(p, "q", s.name), rng);
  if (s.name == "core")
    return sample_core_given_kernel(named_kernel(get_param<std::string>(p, "kernel", s.name)),
                                    get_param<int>(p, "k", s.name), max_tries, rng);
  if (s.name == "planar") {
    auto method = planar_method(s);
    std::int64_t budget = param_or<std::int64_t>(p, "budget", max_tries, s.name);
    return sample_planar(get_param<int>(p, "n", s.name), get_param<long long>(p, "m", s.name),
                         method, budget, rng)
        .graph;
  }
  throw ConfigError("unknown sampler \"" + s.name + "\"");
}

std::string describe(const SamplerSpec& s) {
  std::string out = s.name;
  for (auto it = s.params.begin(); it != s.params.end(); ++it) {
    out += ' ';
    out += it.key();
    out += '=';
    out += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
  }
  return out;
}

MultiGraph named_kernel(const std::string& name) {
  if (name == "theta") return MultiGraph(2, {{1, 2}, {1, 2}, {1, 2}});
  if (name == "K4") return MultiGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  if (name == "figure8") return MultiGraph(1, {{1, 1}, {1, 1}});
  throw ConfigError("unknown kernel \"" + name + "\" (expected theta, K4 or figure8)");
}

Graph subdivided_core(const MultiGraph& kernel, int per_edge) {
  if (per_edge < 0) throw ContractViolation("subdivided_core: negative subdivision");
  std::vector<std::vector<int>> paths;
  int next = kernel.n() + 1;
  for (const auto& e : kernel.edges()) {
    std::vector<int> path;
    for (int i = 0; i < per_edge; ++i) path.push_back(next++);
    if (e.first == e.second && per_edge < 2)
      throw ContractViolation("subdivided_core: a loop needs at least two subdivisions");
    paths.push_back(std::move(path));
  }
  std::vector<int> identity(static_cast<std::size_t>(kernel.n()));
  std::iota(identity.begin(), identity.end(), 1);
  return rebuild_core(kernel, paths, identity, next - 1);
}

std::uint64_t edge_key(const Graph& g) {
  if (g.n() > 11) throw UnsupportedCombination("edge_key: more than 11 labels");
  std::uint64_t key = 0;
  for (auto [u, v] : g.edges()) key |= std::uint64_t{1} << ((v - 1) * (v - 2) / 2 + (u - 1));
  return key;
}

std::vector<Graph> enumerate_class(const SamplerSpec& s) {
  validate(s);
  auto [n, m] = outcome_shape(s);
  if (n > 11) throw UnsupportedCombination("enumerate_class: more than 11 labels");
  const int pairs = n * (n - 1) / 2;
  std::vector<Edge> all;
  for (int v = 2; v <= n; ++v)
    for (int u = 1; u < v; ++u) all.emplace_back(u, v);
  std::vector<Graph> out;
  if (m < 0 || m > pairs) return out;
  double subsets = std::exp(std::lgamma(pairs + 1.0) - std::lgamma(m + 1.0) -
                            std::lgamma(pairs - m + 1.0));
  if (subsets > 5e6) throw UnsupportedCombination("enumerate_class: too many edge subsets");
  auto keep = class_predicate(s);
  // Lexicographic m-subsets of pair indices.
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    std::vector<Edge> edges;
    edges.reserve(idx.size());
    for (int i : idx) edges.push_back(all[i]);
    Graph g(n, std::move(edges));
    if (keep(g)) out.push_back(std::move(g));
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && idx[i] == pairs - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double expected_uniform_tv(std::int64_t k, std::int64_t draws) {
  if (k <= 1 || draws <= 0) return 0.0;
  const double p = 1.0 / static_cast<double>(k);
  const double mean = p * static_cast<double>(draws);
  const double sd = std::sqrt(mean * (1 - p));
  auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(mean - 12 * sd - 1));
  auto hi = std::min<std::int64_t>(draws, static_cast<std::int64_t>(mean + 12 * sd + 1));
  double mad = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x)
    mad += std::exp(log_binom_pmf(draws, x, p)) * std::abs(static_cast<double>(x) - mean);
  return 0.5 * static_cast<double>(k) * mad / static_cast<double>(draws);
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

using SuiteFn = std::function<std::vector<ReportRow>(const ExperimentConfig&)>;
const std::map<std::string, SuiteFn>& suite_table();

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys{"suite",  "seed",   "replicates", "radius",
                                          "policy", "n",      "regime",     "params",
                                          "tolerance", "max_tries", "output", "manifest"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) throw ConfigError("unknown config field \"" + it.key() + "\"");
  ExperimentConfig c;
  c.source = j;
  const std::string where = "config";
  try {
    c.suite = get_param<std::string>(j, "suite", where);
    if (!suite_table().count(c.suite)) throw ConfigError("unknown suite \"" + c.suite + "\"");
    c.seed = param_or<std::uint64_t>(j, "seed", 1, where);
    if (j.contains("replicates")) {
      c.replicates = get_param<std::int64_t>(j, "replicates", where);
      if (*c.replicates < 1) throw ConfigError("replicates must be positive");
    }
    if (j.contains("radius")) {
      c.radius = get_param<int>(j, "radius", where);
      if (*c.radius < 0) throw ConfigError("radius must be non-negative");
    }
    if (j.contains("policy")) c.policy = parse_root_policy(get_param<std::string>(j, "policy", where));
    if (j.contains("n")) {
      const auto& n = j.at("n");
      if (n.is_number_integer()) {
        c.n = {n.get<int>()};
      } else if (n.is_array()) {
        for (const auto& x : n) {
          if (!x.is_number_integer()) throw ConfigError("n must hold integers");
          c.n.push_back(x.get<int>());
        }
      } else {
        throw ConfigError("n must be an integer or an array of integers");
      }
      for (int x : c.n)
        if (x < 1) throw ConfigError("n values must be positive");
    }
    if (j.contains("regime")) {
      const auto& r = j.at("regime");
      if (r.is_string()) {
        c.regime = RegimeSpec::make(parse_regime(r.get<std::string>()), 1.0);
      } else if (r.is_object()) {
        auto name = get_param<std::string>(r, "name", "regime");
        c.regime = RegimeSpec::make(parse_regime(name), param_or<double>(r, "c", 1.0, "regime"));
      } else {
        throw ConfigError("regime must be a name or {\"name\", \"c\"}");
      }
    }
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw ConfigError("params must be an object");
      c.params = j.at("params");
    }
    if (j.contains("tolerance")) c.tolerance = get_param<double>(j, "tolerance", where);
    c.max_tries = param_or<std::int64_t>(j, "max_tries", 1'000'000, where);
    if (c.max_tries < 1) throw ConfigError("max_tries must be positive");
    c.output = param_or<std::string>(j, "output", "", where);
    c.manifest = param_or<std::string>(j, "manifest", "", where);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::vector<std::string> known_suites() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suite_table()) out.push_back(name);
  return out;
}

std::string config_hash(const ExperimentConfig& c) {
  std::string canon = c.source.dump();  // std::map-backed json: keys sorted
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct Ctx {
  const ExperimentConfig& cfg;
  std::vector<ReportRow> rows;

  ReportRow& add(std::string parameters, std::string statistic, double observed, double reference,
                 double tolerance, bool pass, std::string reason = "") {
    rows.push_back({cfg.suite, std::move(parameters), std::move(statistic), observed, reference,
                    tolerance, pass, 0.0, cfg.seed, std::move(reason)});
    return rows.back();
  }
  ReportRow& within(std::string parameters, std::string statistic, double observed,
                    double reference, double tolerance, std::string reason = "") {
    bool pass = std::abs(observed - reference) <= tolerance;
    return add(std::move(parameters), std::move(statistic), observed, reference, tolerance, pass,
               std::move(reason));
  }
  std::int64_t replicates(std::int64_t fallback) const { return cfg.replicates.value_or(fallback); }
  int radius(int fallback) const { return cfg.radius.value_or(fallback); }
  double tol(double fallback) const { return cfg.tolerance.value_or(fallback); }
  int n(int fallback) const { return cfg.n.empty() ? fallback : cfg.n.front(); }
  template <class T>
  T param(const char* key, T fallback) const {
    return param_or<T>(cfg.params, key, fallback, cfg.suite);
  }
};

constexpr std::uint64_t kBlock = std::uint64_t{1} << 40;  // stream spacing between sub-runs

// Budget rule: up to 5% failed replicates is a warning, more fails the suite.
// Returns true when the main statistic may still pass.
bool budget_rows(Ctx& ctx, const std::string& parameters, std::int64_t failures,
                 std::int64_t attempted) {
  if (failures == 0) return true;
  double frac = static_cast<double>(failures) / static_cast<double>(attempted);
  std::string msg = std::to_string(failures) + " of " + std::to_string(attempted) +
                    " replicates exhausted max_tries";
  if (frac <= 0.05) {
    ctx.add(parameters, "budget_failures", frac, 0.0, 0.05, true, "warning: " + msg);
    return true;
  }
  ctx.add(parameters, "budget_failures", frac, 0.0, 0.05, false, "budget");
  return false;
}

struct BallRun {
  EmpiricalDist dist;
  std::int64_t failures = 0;
  std::int64_t attempted = 0;
};

RootMode root_mode(const Ctx& ctx, RootMode fallback) {
  auto m = ctx.param<std::string>("roots", fallback == RootMode::all ? "all" : "one");
  if (m == "all") return RootMode::all;
  if (m == "one") return RootMode::one;
  throw ConfigError("roots must be \"one\" or \"all\"");
}

BallRun collect_balls(const Ctx& ctx, std::int64_t count, std::uint64_t stream_base,
                      const std::function<Graph(Rng&)>& make, RootPolicy policy, int radius,
                      RootMode mode) {
  std::vector<EmpiricalDist> parts(static_cast<std::size_t>(count));
  std::vector<char> failed(static_cast<std::size_t>(count), 0);
  const auto seed = ctx.cfg.seed;
  parallel_for(count, [&](std::int64_t i) {
    Rng rng = derive_seed(seed, stream_base + static_cast<std::uint64_t>(i));
    Rng roots = derive_seed(seed, kRootStreamBase + stream_base + static_cast<std::uint64_t>(i));
    try {
      Graph g = make(rng);
      accumulate(parts[i], g, policy, radius, roots, mode);
    } catch (const BudgetError&) {
      failed[i] = 1;
    }
  });
  BallRun out;
  out.attempted = count;
  for (std::int64_t i = 0; i < count; ++i) {
    out.failures += failed[i];
    out.dist.merge(parts[i]);
  }
  out.dist.provenance.seed = seed;
  out.dist.provenance.policy = root_policy_name(policy);
  out.dist.provenance.radius = radius;
  return out;
}

ReferenceOptions reference_options(const Ctx& ctx) {
  ReferenceOptions o;
  o.mass_tol = ctx.param<double>("mass_tol", 1e-4);
  o.mc_samples = ctx.param<std::int64_t>("reference_samples", 1'000'000);
  o.seed = ctx.cfg.seed;
  return o;
}

// Draw `count` outcomes of `spec` and compare against brute-force enumeration.
void uniformity_row(Ctx& ctx, const SamplerSpec& spec, std::int64_t count, std::uint64_t stream_base,
                    double tolerance, bool chi2_row) {
  const std::string params = describe(spec);
  validate(spec);
  auto outcomes = enumerate_class(spec);
  if (outcomes.empty()) {
    bool refuses = false;
    try {
      Rng rng = derive_seed(ctx.cfg.seed, stream_base);
      draw(spec, rng, ctx.cfg.max_tries);
    } catch (const EmptyClassError&) {
      refuses = true;
    } catch (const BudgetError&) {
      refuses = true;
    }
    ctx.add(params, "tv", 0.0, 0.0, tolerance, refuses,
            refuses ? "empty class" : "empty class but the sampler produced a graph");
    return;
  }
  std::map<std::uint64_t, std::int64_t> index;
  for (const auto& g : outcomes) index.emplace(edge_key(g), 0);
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(count));
  std::vector<char> failed(static_cast<std::size_t>(count), 0);
  parallel_for(count, [&](std::int64_t i) {
    Rng rng = derive_seed(ctx.cfg.seed, stream_base + static_cast<std::uint64_t>(i));
    try {
      keys[i] = edge_key(draw(spec, rng, ctx.cfg.max_tries));
    } catch (const BudgetError&) {
      failed[i] = 1;
    }
  });
  std::int64_t outside = 0, failures = 0, good = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    if (failed[i]) {
      ++failures;
      continue;
    }
    ++good;
    auto it = index.find(keys[i]);
    if (it == index.end())
      ++outside;
    else
      ++it->second;
  }
  bool ok = budget_rows(ctx, params, failures, count);
  if (good == 0) {
    ctx.add(params, "tv", std::nan(""), 0.0, tolerance, false, "budget");
    return;
  }
  const double p = 1.0 / static_cast<double>(outcomes.size());
  double sum = static_cast<double>(outside) / static_cast<double>(good);
  for (const auto& [key, c] : index) sum += std::abs(static_cast<double>(c) / good - p);
  double tv = 0.5 * sum;
  std::string reason = "outcomes=" + std::to_string(outcomes.size()) +
                       " expected tv if exactly uniform=" +
                       fmt9(expected_uniform_tv(static_cast<std::int64_t>(outcomes.size()), good));
  if (outside > 0) reason += " draws outside class=" + std::to_string(outside);
  ctx.add(params, "tv", tv, 0.0, tolerance, ok && tv < tolerance, ok ? reason : "budget");
  if (!chi2_row || outcomes.size() < 2) return;
  // Pearson goodness of fit; a draw outside the class forces p = 0.
  const double expected = static_cast<double>(good) * p;
  double chi2 = 0.0;
  for (const auto& [key, c] : index) chi2 += (c - expected) * (c - expected) / expected;
  const double df = static_cast<double>(outcomes.size() - 1);
  const double pvalue = outside > 0 ? 0.0 : boost::math::gamma_q(df / 2, chi2 / 2);
  ctx.add(params, "chi2_pvalue", pvalue, 0.0, 0.001, ok && pvalue >= 0.001,
          "supplementary; pass iff p >= tolerance; df=" + fmt9(df) + " chi2=" + fmt9(chi2));
}

SamplerSpec spec(std::string name, json params) { return {std::move(name), std::move(params)}; }

std::vector<SamplerSpec> default_uniformity_spaces() {
  std::vector<SamplerSpec> out;
  for (int n : {4, 5}) out.push_back(spec("cayley", {{"n", n}}));
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= std::min(3, n); ++t) out.push_back(spec("forest", {{"n", n}, {"t", t}}));
  for (int m = 0; m <= 6; ++m) out.push_back(spec("gnm", {{"n", 4}, {"m", m}}));
  for (int m = 0; m <= 4; ++m) out.push_back(spec("noncomplex", {{"n", 4}, {"m", m}}));
  out.push_back(spec("complexpart", {{"kernel", "K4"}, {"subdivide", 0}, {"q", 6}}));
  out.push_back(spec("core", {{"kernel", "theta"}, {"k", 2}}));
  for (int n = 1; n <= 5; ++n)
    for (long long m = 0; m <= max_planar_edges(n); ++m)
      out.push_back(spec("planar", {{"n", n}, {"m", m}, {"method", "rejection"}}));
  return out;
}

std::vector<ReportRow> suite_uniformity(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  std::vector<SamplerSpec> spaces;
  if (cfg.params.contains("spaces")) {
    for (const auto& s : cfg.params.at("spaces")) spaces.push_back(sampler_spec_from_json(s));
  } else {
    spaces = default_uniformity_spaces();
  }
  for (const auto& s : spaces) validate(s);
  const auto count = ctx.replicates(100'000);
  for (std::size_t j = 0; j < spaces.size(); ++j)
    uniformity_row(ctx, spaces[j], count, j * kBlock, ctx.tol(0.01), ctx.param<bool>("chi2", true));
  return ctx.rows;
}

std::vector<ReportRow> suite_forest_uniform(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  std::vector<int> ns = cfg.n.empty() ? std::vector<int>{4} : cfg.n;
  int t = ctx.param<int>("t", 2);
  std::vector<SamplerSpec> spaces;
  for (int n : ns) spaces.push_back(spec("forest", {{"n", n}, {"t", t}}));
  for (const auto& s : spaces) validate(s);
  const auto count = ctx.replicates(100'000);
  for (std::size_t j = 0; j < spaces.size(); ++j)
    uniformity_row(ctx, spaces[j], count, j * kBlock, ctx.tol(0.01), ctx.param<bool>("chi2", false));
  return ctx.rows;
}

std::vector<ReportRow> suite_borel(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const auto count = ctx.replicates(1'000'000);
  const auto cap = ctx.param<std::int64_t>("cap", 100'000);
  const int kmax = ctx.param<int>("kmax", 10);
  const double tol = ctx.tol(0.005);
  if (cap < 1 || kmax < 1) throw ConfigError("BOREL: cap and kmax must be positive");
  std::vector<std::int64_t> total(static_cast<std::size_t>(count));
  parallel_for(count, [&](std::int64_t i) {
    Rng rng = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    total[i] = sample_gw_total(1.0, cap, rng).value_or(-1);
  });
  std::vector<std::int64_t> freq(static_cast<std::size_t>(kmax) + 1, 0);
  std::int64_t capped = 0;
  for (auto t : total) {
    if (t < 0)
      ++capped;
    else if (t <= kmax)
      ++freq[t];
  }
  const std::string params = "c=1 N=" + std::to_string(count) + " cap=" + std::to_string(cap);
  double sum = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    double f = static_cast<double>(freq[k]) / static_cast<double>(count);
    double ref = borel_pmf(k);
    sum += std::abs(f - ref);
    ctx.within(params, "freq_k=" + std::to_string(k), f, ref, tol);
  }
  ctx.add(params, "sum_abs_dev_k1_" + std::to_string(kmax), sum, 0.0, tol, sum < tol);
  double capped_frac = static_cast<double>(capped) / static_cast<double>(count);
  ctx.add(params, "capped_fraction", capped_frac, 0.0, 0.01, capped_frac < 0.01);
  return ctx.rows;
}

std::vector<ReportRow> suite_er_census(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(100'000);
  const double c = ctx.param<double>("c", 1.0);
  const int radius = ctx.radius(2);
  const double min_prob = ctx.param<double>("min_prob", 0.01);
  const double tol = ctx.tol(0.01);
  const auto seeds = ctx.replicates(5);
  const int max_size = ctx.param<int>("max_size", 12);
  const long long m = std::llround(c * n / 2.0);
  validate(spec("gnm", {{"n", n}, {"m", m}}));
  std::vector<std::pair<PlaneTree, double>> targets;
  for (int size = 1; size <= max_size; ++size)
    for_each_plane_tree(size, radius, [&](const std::vector<int>& counts) {
      PlaneTree t{counts, size, radius};
      double p = gw_plane_prob(c, t);
      if (p >= min_prob) targets.emplace_back(t, p);
    });
  std::vector<std::map<PlaneTree, long long>> census_by_seed(static_cast<std::size_t>(seeds));
  parallel_for(seeds, [&](std::int64_t i) {
    Rng rng = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    census_by_seed[i] = plane_census(sample_gnm(n, m, rng), radius);
  });
  for (std::int64_t i = 0; i < seeds; ++i) {
    const std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                               " r=" + std::to_string(radius) + " replicate=" + std::to_string(i);
    double worst = 0.0;
    for (const auto& [t, p] : targets) {
      auto it = census_by_seed[i].find(t);
      double frac = it == census_by_seed[i].end() ? 0.0 : static_cast<double>(it->second) / n;
      worst = std::max(worst, std::abs(frac - p));
      ctx.within(params, "census/n[" + t.to_string() + "]", frac, p, tol);
    }
    ctx.add(params, "max_abs_dev", worst, 0.0, tol, worst < tol,
            std::to_string(targets.size()) + " plane trees with probability >= " + fmt9(min_prob));
  }
  return ctx.rows;
}

std::vector<ReportRow> suite_noncomplex(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(2000);
  const long long m = ctx.param<long long>("m", n / 2);
  const int radius = ctx.radius(2);
  const auto count = ctx.replicates(200);
  const auto policy = cfg.policy.value_or(RootPolicy::uniform);
  const auto mode = root_mode(ctx, RootMode::all);
  const double c = 2.0 * static_cast<double>(m) / n;
  if (c > 1) throw ConfigError("NONCOMPLEX_LIMIT: 2m/n must not exceed 1");
  validate(spec("noncomplex", {{"n", n}, {"m", m}}));
  auto ref = gw_ball_reference(c, radius, reference_options(ctx).mass_tol);
  auto run = collect_balls(
      ctx, count, 0, [&](Rng& rng) { return sample_noncomplex(n, m, cfg.max_tries, rng); }, policy,
      radius, mode);
  const std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                             " r=" + std::to_string(radius) + " policy=" + root_policy_name(policy);
  bool ok = budget_rows(ctx, params, run.failures, run.attempted);
  if (run.dist.total == 0) {
    ctx.add(params, "tv_vs_GW", std::nan(""), 0.0, ctx.tol(0.05), false, "budget");
    return ctx.rows;
  }
  double tv = tv_distance(run.dist, ref);
  ctx.add(params, "tv_vs_GW(" + fmt9(c) + ")", tv, 0.0, ctx.tol(0.05), ok && tv < ctx.tol(0.05),
          ok ? "balls=" + std::to_string(run.dist.total) : "budget");
  return ctx.rows;
}

std::vector<ReportRow> suite_complex_part(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int q = ctx.n(10'000);
  const auto kernel_name = ctx.param<std::string>("kernel", "theta");
  const int subdivide = ctx.param<int>("subdivide", 6);
  const int radius = ctx.radius(2);
  const auto count = ctx.replicates(500);
  const auto policy = cfg.policy.value_or(RootPolicy::uniform);
  const auto mode = root_mode(ctx, RootMode::all);
  Graph core = subdivided_core(named_kernel(kernel_name), subdivide);
  validate(spec("complexpart", {{"kernel", kernel_name}, {"subdivide", subdivide}, {"q", q}}));
  auto recipe = LimitRecipe::skeleton(1);
  auto ref = instantiate(recipe, radius, reference_options(ctx));
  auto run = collect_balls(
      ctx, count, 0, [&](Rng& rng) { return sample_complexpart(core, q, rng); }, policy, radius,
      mode);
  const std::string params = "core=" + kernel_name + "/" + std::to_string(subdivide) +
                             " v(C)=" + std::to_string(core.n()) + " q=" + std::to_string(q) +
                             " r=" + std::to_string(radius) + " policy=" + root_policy_name(policy);
  double tv = tv_distance(run.dist, ref);
  ctx.add(params, "tv_vs_" + recipe.describe(), tv, 0.0, ctx.tol(0.05), tv < ctx.tol(0.05),
          "balls=" + std::to_string(run.dist.total));
  return ctx.rows;
}

std::vector<ReportRow> suite_core_kernel(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int k = ctx.n(10'000);
  const auto kernel_name = ctx.param<std::string>("kernel", "K4");
  const int radius = ctx.radius(3);
  const auto count = ctx.replicates(1000);
  MultiGraph kernel = named_kernel(kernel_name);
  validate(spec("core", {{"kernel", kernel_name}, {"k", k}}));
  auto make = [&](Rng& rng) { return sample_core_given_kernel(kernel, k, cfg.max_tries, rng); };
  const std::string base = "kernel=" + kernel_name + " k=" + std::to_string(k) +
                           " r=" + std::to_string(radius);
  struct Case {
    RootPolicy policy;
    int rays;
    double tol;
  };
  const Case cases[] = {{RootPolicy::uniform, 2, ctx.param<double>("core_tolerance", 0.01)},
                        {RootPolicy::kernel, 3, ctx.param<double>("kernel_tolerance", 0.05)}};
  std::uint64_t block = 0;
  for (const auto& cs : cases) {
    auto run = collect_balls(ctx, count, block, make, cs.policy, radius, RootMode::one);
    block += kBlock;
    const std::string params = base + " policy=" + root_policy_name(cs.policy);
    bool ok = budget_rows(ctx, params, run.failures, run.attempted);
    double freq = run.dist.total == 0
                      ? std::nan("")
                      : static_cast<double>(run.dist.counts[spine_code(cs.rays, radius)]) /
                            static_cast<double>(run.dist.total);
    ctx.add(params, "freq_" + std::to_string(cs.rays) + "_ray_code", freq, 1.0, cs.tol,
            ok && freq >= 1.0 - cs.tol, ok ? "" : "budget");
  }
  return ctx.rows;
}

std::vector<ReportRow> suite_subdivision(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const auto kernel_name = ctx.param<std::string>("kernel", "K4");
  const int edge = ctx.param<int>("edge", 0);
  std::vector<int> ks = cfg.n.empty() ? std::vector<int>{100, 1000, 10'000} : cfg.n;
  const auto count = ctx.replicates(1000);
  const double factor = ctx.tol(2.0);
  MultiGraph kernel = named_kernel(kernel_name);
  if (edge < 0 || edge >= static_cast<int>(kernel.m())) throw ConfigError("edge index out of range");
  Edge target = kernel.edges()[edge];
  if (target.first > target.second) std::swap(target.first, target.second);
  for (int k : ks) validate(spec("core", {{"kernel", kernel_name}, {"k", k}}));
  std::vector<double> medians;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const int k = ks[j];
    std::vector<int> sub(static_cast<std::size_t>(count), -1);
    parallel_for(count, [&](std::int64_t i) {
      Rng rng = derive_seed(cfg.seed, j * kBlock + static_cast<std::uint64_t>(i));
      try {
        auto kr = kernel_of(sample_core_given_kernel(kernel, k, cfg.max_tries, rng));
        for (std::size_t id = 0; id < kr.kernel.edges().size(); ++id) {
          auto [u, v] = kr.kernel.edges()[id];
          int a = kr.vertex_map[u - 1], b = kr.vertex_map[v - 1];
          if (a > b) std::swap(a, b);
          if (a == target.first && b == target.second) {
            sub[i] = kr.subdivision[id];
            break;
          }
        }
      } catch (const BudgetError&) {
      }
    });
    std::vector<int> ok_values;
    for (int s : sub)
      if (s >= 0) ok_values.push_back(s);
    const std::string params = "kernel=" + kernel_name + " edge=" + std::to_string(edge) +
                               " k=" + std::to_string(k);
    bool budget_ok = budget_rows(ctx, params, count - static_cast<std::int64_t>(ok_values.size()), count);
    double median = std::nan("");
    if (!ok_values.empty()) {
      std::sort(ok_values.begin(), ok_values.end());
      std::size_t h = ok_values.size() / 2;
      median = ok_values.size() % 2 ? ok_values[h] : 0.5 * (ok_values[h - 1] + ok_values[h]);
    }
    medians.push_back(median);
    const double ref = static_cast<double>(k) / static_cast<double>(kernel.m());
    const bool last = j + 1 == ks.size();
    const bool in_factor = median >= ref / factor && median <= ref * factor;
    ctx.add(params, "median_subdivision", median, ref, factor,
            budget_ok && (!last || in_factor),
            !budget_ok ? "budget" : last ? "pass iff within a factor of tolerance of k/e(K)"
                                         : "informational");
  }
  bool increasing = true;
  for (std::size_t j = 1; j < medians.size(); ++j)
    increasing = increasing && medians[j] > medians[j - 1];
  std::string all = "kernel=" + kernel_name + " ks=";
  for (std::size_t j = 0; j < ks.size(); ++j) all += (j ? "/" : "") + std::to_string(ks[j]);
  ctx.add(all, "medians_strictly_increasing", increasing ? 1.0 : 0.0, 1.0, 0.0, increasing);
  return ctx.rows;
}

std::vector<ReportRow> suite_tree_distance(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(10'000);
  const auto count = ctx.replicates(1000);
  const double lo = ctx.param<double>("window_lo", 0.8), hi = ctx.param<double>("window_hi", 1.6);
  const double frac_tol = ctx.tol(0.01);
  const int validate_n = ctx.param<int>("validate_n", 1000);
  const auto validate_count = ctx.param<std::int64_t>("validate_replicates", 10'000);
  if (n < 2 || validate_n < 2) throw ConfigError("TREE_DISTANCE: n must be at least 2");

  auto distances = [&](int size, std::int64_t draws, std::uint64_t block) {
    std::vector<int> d(static_cast<std::size_t>(draws));
    parallel_for(draws, [&](std::int64_t i) {
      Rng rng = derive_seed(cfg.seed, block + static_cast<std::uint64_t>(i));
      Graph t = sample_cayley_tree(size, rng);
      int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
      int b = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size - 1)));
      if (b >= a) ++b;
      d[i] = bfs_distances(t, a)[b];
    });
    return d;
  };
  auto median_of = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::size_t h = v.size() / 2;
    return v.size() % 2 ? static_cast<double>(v[h]) : 0.5 * (v[h - 1] + v[h]);
  };
  auto exact_median = [](int size) {
    double acc = 0.0;
    for (int k = 1; k < size; ++k) {
      acc += cayley_distance_pmf(size, k);
      if (acc >= 0.5) return k;
    }
    return size - 1;
  };
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);

  // Window check at the validation size first.
  auto dv = distances(validate_n, validate_count, kBlock);
  double vmed = median_of(dv) / std::sqrt(static_cast<double>(validate_n));
  ctx.within("n=" + std::to_string(validate_n) + " N=" + std::to_string(validate_count),
             "window_check_median/sqrt(n)", vmed, mid, half,
             "exact median/sqrt(n)=" +
                 fmt9(exact_median(validate_n) / std::sqrt(static_cast<double>(validate_n))));

  auto d = distances(n, count, 0);
  const double cut = std::cbrt(static_cast<double>(n));
  std::int64_t above = 0;
  for (int x : d) above += x > cut;
  double frac = static_cast<double>(above) / static_cast<double>(count);
  double exact_above = 0.0;
  for (int k = static_cast<int>(std::floor(cut)) + 1; k < n; ++k)
    exact_above += cayley_distance_pmf(n, k);
  const std::string params = "n=" + std::to_string(n) + " N=" + std::to_string(count);
  ctx.add(params, "frac_dist>n^(1/3)", frac, 1.0, frac_tol, frac >= 1.0 - frac_tol,
          "exact P(d>n^(1/3))=" + fmt9(exact_above));
  ctx.within(params, "median_dist/sqrt(n)", median_of(d) / std::sqrt(static_cast<double>(n)), mid,
             half, "exact median/sqrt(n)=" + fmt9(exact_median(n) / std::sqrt(static_cast<double>(n))));
  return ctx.rows;
}

std::vector<ReportRow> suite_cayley_gw(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(5);
  const int radius = ctx.radius(n);
  const double tol = ctx.tol(1e-9);
  if (n < 1 || n > 8) throw ConfigError("CAYLEY_GW: n must lie in 1..8");
  // Labelled side: every Pruefer sequence, every root.
  std::map<BallCode, double> labelled;
  const int len = std::max(n - 2, 0);
  long long trees = 1;
  for (int i = 0; i < len; ++i) trees *= n;
  std::vector<int> seq(static_cast<std::size_t>(len), 0);
  const double w = 1.0 / (static_cast<double>(trees) * n);
  for (long long idx = 0; idx < trees; ++idx) {
    long long x = idx;
    for (int i = 0; i < len; ++i) {
      seq[i] = static_cast<int>(x % n);
      x /= n;
    }
    std::vector<Edge> edges;
    if (n == 2) edges.emplace_back(0, 1);
    if (n > 2) edges = decode_pruefer(seq);
    for (auto& [u, v] : edges) {
      ++u;
      ++v;
    }
    Graph t(n, std::move(edges));
    BallExtractor extract(t);
    for (int v = 1; v <= n; ++v) labelled[ball_code(extract(v, radius))] += w;
  }
  // Plane-tree side: GW(1) conditioned on total size n, truncated at `radius`.
  std::map<BallCode, double> conditioned;
  const double z = borel_pmf(n);
  for_each_plane_tree(n, n, [&](const std::vector<int>& counts) {
    PlaneTree t{counts, n, n};
    auto parents = t.parents();
    auto depth = t.depths();
    std::vector<int> keep_index(parents.size(), -1);
    std::vector<int> cut_parent;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (depth[i] > radius) continue;
      keep_index[i] = static_cast<int>(cut_parent.size());
      cut_parent.push_back(parents[i] < 0 ? -1 : keep_index[parents[i]]);
    }
    conditioned[tree_code_from_parents(cut_parent)] += gw_plane_prob(1.0, t) / z;
  });
  double worst = 0.0;
  std::set<BallCode> codes;
  for (const auto& [c, p] : labelled) codes.insert(c);
  for (const auto& [c, p] : conditioned) codes.insert(c);
  for (const auto& c : codes) {
    double a = labelled.count(c) ? labelled[c] : 0.0;
    double b = conditioned.count(c) ? conditioned[c] : 0.0;
    worst = std::max(worst, std::abs(a - b));
  }
  ctx.add("n=" + std::to_string(n) + " r=" + std::to_string(radius), "max_abs_diff", worst, 0.0,
          tol, worst <= tol, std::to_string(codes.size()) + " ball classes");
  return ctx.rows;
}

std::vector<ReportRow> suite_planar_small(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(30);
  const long long m = ctx.param<long long>("m", n / 2);
  const int radius = ctx.radius(1);
  const auto count = ctx.replicates(500);
  const auto policy = cfg.policy.value_or(RootPolicy::uniform);
  const auto mode = root_mode(ctx, RootMode::all);
  validate(spec("planar", {{"n", n}, {"m", m}, {"method", "rejection"}}));
  auto planar = collect_balls(
      ctx, count, 0,
      [&](Rng& rng) {
        return sample_planar(n, m, PlanarMethod::rejection, cfg.max_tries, rng).graph;
      },
      policy, radius, mode);
  auto er = collect_balls(
      ctx, count, kBlock, [&](Rng& rng) { return sample_gnm(n, m, rng); }, policy, radius, mode);
  const std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                             " r=" + std::to_string(radius) + " policy=" + root_policy_name(policy);
  bool ok = budget_rows(ctx, params, planar.failures, planar.attempted);
  if (planar.dist.total == 0) {
    ctx.add(params, "tv_planar_vs_gnm", std::nan(""), 0.0, ctx.tol(0.05), false, "budget");
    return ctx.rows;
  }
  double tv = tv_distance(planar.dist, er.dist);
  ctx.add(params, "tv_planar_vs_gnm", tv, 0.0, ctx.tol(0.05), ok && tv < ctx.tol(0.05),
          ok ? "" : "budget");
  return ctx.rows;
}

double max_abs_diff(const LimitDist& a, const LimitDist& b) {
  double worst = std::abs(a.leftover - b.leftover);
  for (const auto& [code, p] : a.mass) worst = std::max(worst, std::abs(p - b.at(code)));
  for (const auto& [code, p] : b.mass) worst = std::max(worst, std::abs(p - a.at(code)));
  return worst;
}

std::vector<ReportRow> suite_mixture(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const double c = ctx.param<double>("c", 1.5);
  const int radius = ctx.radius(2);
  const auto opts = reference_options(ctx);
  auto spec3 = RegimeSpec::make(Regime::III, c);
  const double a = c - 1;
  auto sk = instantiate(LimitRecipe::skeleton(1), radius, opts);
  auto gw = gw_ball_reference(1.0, radius, opts.mass_tol);
  auto mixed = mixture(a, sk, gw);
  // Independent pointwise combination.
  LimitDist direct;
  std::set<BallCode> codes;
  for (const auto& [code, p] : sk.mass) codes.insert(code);
  for (const auto& [code, p] : gw.mass) codes.insert(code);
  for (const auto& code : codes) direct.mass[code] = a * sk.at(code) + (1 - a) * gw.at(code);
  direct.leftover = a * sk.leftover + (1 - a) * gw.leftover;
  const std::string params = "c=" + fmt9(c) + " r=" + std::to_string(radius);
  double d1 = max_abs_diff(mixed, direct);
  ctx.add(params, "mixture_vs_pointwise_max_abs_diff", d1, 0.0, 0.0, d1 == 0.0);
  auto predicted = predicted_limit(spec3, RootPolicy::uniform);
  auto inst = instantiate(predicted, radius, opts);
  double d2 = max_abs_diff(inst, mixed);
  ctx.add(params, "predicted_III_uniform_vs_mixture_max_abs_diff", d2, 0.0, 0.0, d2 == 0.0,
          predicted.describe());
  return ctx.rows;
}

std::vector<ReportRow> suite_planar_structure(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  const int n = ctx.n(400);
  const long long m = ctx.param<long long>("m", 300);
  const auto samples = ctx.replicates(100);
  const auto burn_in = ctx.param<std::int64_t>("burn_in", 1'000'000);
  const auto thin = ctx.param<std::int64_t>("thin", 10'000);
  const double tol = ctx.tol(0.15);
  const double c = 2.0 * static_cast<double>(m) / n;
  RegimeSpec regime = c <= 1 ? RegimeSpec::make(Regime::I, c)
                     : c < 2 ? RegimeSpec::make(Regime::III, c)
                             : RegimeSpec::make(Regime::IV, 2.0);
  validate(spec("planar", {{"n", n}, {"m", m}, {"method", "mcmc"}}));
  if (m > max_planar_edges(n)) throw ConfigError("PLANAR_STRUCTURE: m exceeds 3n-6");
  // One chain; replicate-level parallelism does not apply.
  Rng rng = derive_seed(cfg.seed, 0);
  auto state = planar_mcmc_steps(planar_start_state(n, m), burn_in, rng);
  std::int64_t accepted = state.accepted_moves;
  double sum = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    state = planar_mcmc_steps(state.graph, thin, rng);
    accepted += state.accepted_moves;
    sum += static_cast<double>(largest_component(state.graph).size()) / n;
  }
  const double mean = sum / static_cast<double>(samples);
  const std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                             " burn_in=" + std::to_string(burn_in) + " thin=" + std::to_string(thin);
  ctx.within(params, "mean_v(L)/n", mean, expected_largest_fraction(regime), tol,
             "diagnostic: MCMC mixing unproven");
  const double proposals = static_cast<double>(burn_in + samples * thin);
  ctx.add(params, "acceptance_rate", static_cast<double>(accepted) / proposals, 0.0, 1.0, true,
          "informational");
  return ctx.rows;
}

std::vector<ReportRow> suite_local_limit(const ExperimentConfig& cfg) {
  Ctx ctx{cfg, {}};
  if (!cfg.regime) throw ConfigError("LOCAL_LIMIT needs a regime");
  const auto regime = *cfg.regime;
  const auto policy = cfg.policy.value_or(RootPolicy::uniform);
  const int radius = ctx.radius(2);
  const auto count = ctx.replicates(200);
  const auto mode = root_mode(ctx, RootMode::all);
  const double tol = ctx.tol(0.05);
  std::vector<int> ns = cfg.n.empty() ? std::vector<int>{1000} : cfg.n;
  SamplerSpec base{"planar", {{"method", "rejection"}}};
  if (cfg.params.contains("sampler")) base = sampler_spec_from_json(cfg.params.at("sampler"));
  LimitRecipe recipe;
  try {
    recipe = predicted_limit(regime, policy);
  } catch (const UnsupportedCombination& e) {
    throw ConfigError(e.what());
  }
  std::vector<SamplerSpec> specs;
  for (int n : ns) {
    SamplerSpec s = base;
    s.params["n"] = n;
    s.params["m"] = regime.edges_for(n);
    validate(s);
    specs.push_back(std::move(s));
  }
  auto ref = instantiate(recipe, radius, reference_options(ctx));
  for (std::size_t j = 0; j < specs.size(); ++j) {
    const auto& s = specs[j];
    auto run = collect_balls(
        ctx, count, j * kBlock, [&](Rng& rng) { return draw(s, rng, cfg.max_tries); }, policy,
        radius, mode);
    const std::string params = describe(s) + " regime=" + regime_name(regime.regime) +
                               " c=" + fmt9(regime.c) + " r=" + std::to_string(radius) +
                               " policy=" + root_policy_name(policy);
    bool ok = budget_rows(ctx, params, run.failures, run.attempted);
    if (run.dist.total == 0) {
      ctx.add(params, "tv_vs_" + recipe.describe(), std::nan(""), 0.0, tol, false,
              run.dist.skipped ? "empty root set" : "budget");
      continue;
    }
    double tv = tv_distance(run.dist, ref);
    ctx.add(params, "tv_vs_" + recipe.describe(), tv, 0.0, tol, ok && tv < tol,
            ok ? "skipped=" + std::to_string(run.dist.skipped) : "budget");
  }
  return ctx.rows;
}

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"UNIFORMITY", suite_uniformity},
      {"FOREST_UNIFORM", suite_forest_uniform},
      {"BOREL", suite_borel},
      {"ER_CENSUS", suite_er_census},
      {"NONCOMPLEX_LIMIT", suite_noncomplex},
      {"COMPLEX_PART_LIMIT", suite_complex_part},
      {"CORE_KERNEL_LIMIT", suite_core_kernel},
      {"SUBDIVISION_GROWTH", suite_subdivision},
      {"TREE_DISTANCE", suite_tree_distance},
      {"CAYLEY_GW", suite_cayley_gw},
      {"PLANAR_SMALL", suite_planar_small},
      {"MIXTURE", suite_mixture},
      {"PLANAR_STRUCTURE", suite_planar_structure},
      {"LOCAL_LIMIT", suite_local_limit},
  };
  return table;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<ReportRow> run_suite(const ExperimentConfig& c) {
  auto it = suite_table().find(c.suite);
  if (it == suite_table().end()) throw ConfigError("unknown suite \"" + c.suite + "\"");
  auto start = std::chrono::steady_clock::now();
  std::vector<ReportRow> rows;
  try {
    rows = it->second(c);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : rows) r.runtime = secs;
  return rows;
}

std::string csv_header() {
  return "suite,parameters,statistic,observed,reference,tolerance,pass,seed,reason\n";
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = csv_header();
  for (const auto& r : rows) {
    out += csv_field(r.suite) + ',' + csv_field(r.parameters) + ',' + csv_field(r.statistic) + ',' +
           fmt9(r.observed) + ',' + fmt9(r.reference) + ',' + fmt9(r.tolerance) + ',' +
           (r.pass ? "true" : "false") + ',' + std::to_string(r.seed) + ',' + csv_field(r.reason) +
           '\n';
  }
  return out;
}

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string manifest_json(const ExperimentConfig& c, const std::vector<ReportRow>& rows,
                          const std::string& started, double runtime) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash(c);
  j["version"] = kVersion;
  j["started"] = started;
  j["runtime"] = runtime;
  j["config"] = c.source;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["suite"] = r.suite;
    row["parameters"] = r.parameters;
    row["statistic"] = r.statistic;
    row["observed"] = number_or_null(r.observed);
    row["reference"] = number_or_null(r.reference);
    row["tolerance"] = number_or_null(r.tolerance);
    row["pass"] = r.pass;
    row["runtime"] = r.runtime;
    row["seed"] = r.seed;
    row["reason"] = r.reason;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::vector<ReportRow> rows_from_manifest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    throw ConfigError("manifest has no rows array");
  std::vector<ReportRow> rows;
  try {
    for (const auto& r : j.at("rows")) {
      ReportRow row;
      row.suite = r.at("suite").get<std::string>();
      row.parameters = r.at("parameters").get<std::string>();
      row.statistic = r.at("statistic").get<std::string>();
      row.observed = number_from(r.at("observed"));
      row.reference = number_from(r.at("reference"));
      row.tolerance = number_from(r.at("tolerance"));
      row.pass = r.at("pass").get<bool>();
      row.runtime = r.value("runtime", 0.0);
      row.seed = r.at("seed").get<std::uint64_t>();
      row.reason = r.value("reason", std::string{});
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest row: ") + e.what());
  }
  return rows;
}

int exit_code_for(const std::vector<ReportRow>& rows) {
  int code = 0;
  for (const auto& r : rows) {
    if (r.pass) continue;
    if (r.reason == "budget") return 3;
    code = 1;
  }
  return code;
}

}  // namespace locallim
