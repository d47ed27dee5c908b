#include "locallim/limits.hpp"

#include <cmath>
#include <cstdio>

#include "locallim/ball_code.hpp"
#include "locallim/errors.hpp"
#include "locallim/samplers.hpp"

namespace locallim {

double gw_plane_prob(double c, const PlaneTree& t) {
  if (c < 0) throw ContractViolation("gw_plane_prob: c must be non-negative");
  if (c == 0) {
    for (int d : t.child_counts)
      if (d > 0) return 0.0;
    return 1.0;
  }
  double log_p = 0.0;
  const double log_c = std::log(c);
  for (int d : t.child_counts) log_p += -c + d * log_c - std::lgamma(d + 1.0);
  return std::exp(log_p);
}

double borel_pmf(std::int64_t k) {
  if (k < 1) throw ContractViolation("borel_pmf: k must be at least 1");
  const auto x = static_cast<double>(k);
  return std::exp(-x + (x - 1) * std::log(x) - std::lgamma(x + 1));
}

LimitDist gw_ball_reference(double c, int radius, double mass_tol, std::int64_t budget) {
  if (c < 0) throw ContractViolation("gw_ball_reference: c must be non-negative");
  if (radius < 0) throw ContractViolation("gw_ball_reference: negative radius");
  if (!(mass_tol > 0 && mass_tol < 1))
    throw ContractViolation("gw_ball_reference: mass_tol must lie in (0,1)");
  LimitDist out;
  char desc[64];
  std::snprintf(desc, sizeof desc, "GW(%.9g) r=%d", c, radius);
  out.origin = {DistOrigin::Kind::analytic, 0, 0, desc};
  double accumulated = 0.0;
  std::int64_t enumerated = 0;
  for (int size = 1;; ++size) {
    for_each_plane_tree(size, radius, [&](const std::vector<int>& counts) {
      if (++enumerated > budget) {
        throw BudgetError("gw_ball_reference: enumeration budget exhausted at size " +
                              std::to_string(size),
                          enumerated, std::max(0.0, 1.0 - accumulated));
      }
      PlaneTree t{counts, size, radius};
      double p = gw_plane_prob(c, t);
      if (p <= 0) return;
      out.mass[tree_code(t)] += p;
      accumulated += p;
    });
    if (1.0 - accumulated < mass_tol) break;
  }
  out.leftover = std::max(0.0, 1.0 - accumulated);
  return out;
}

LimitDist sk_ball_reference(int k, int radius, std::int64_t samples, Rng& rng) {
  if (samples < 1) throw ContractViolation("sk_ball_reference: need at least one sample");
  std::map<BallCode, std::int64_t> counts;
  for (std::int64_t i = 0; i < samples; ++i) ++counts[ball_code(sample_skeleton_ball(k, radius, rng))];
  LimitDist out;
  char desc[64];
  std::snprintf(desc, sizeof desc, "SK(%d) r=%d", k, radius);
  out.origin = {DistOrigin::Kind::monte_carlo, samples, rng.seed(), desc};
  for (const auto& [code, count] : counts)
    out.mass[code] = static_cast<double>(count) / static_cast<double>(samples);
  return out;
}

LimitDist mixture(double a, const LimitDist& d1, const LimitDist& d2) {
  if (!(a >= 0 && a <= 1)) throw ContractViolation("mixture: weight must lie in [0,1]");
  LimitDist out;
  for (const auto& [code, p] : d1.mass) out.mass[code] += a * p;
  for (const auto& [code, p] : d2.mass) out.mass[code] += (1 - a) * p;
  out.leftover = a * d1.leftover + (1 - a) * d2.leftover;
  char desc[32];
  std::snprintf(desc, sizeof desc, "%.9g", a);
  out.origin = {DistOrigin::Kind::mixture, 0, 0,
                std::string("mixture(") + desc + ", " + d1.origin.description + ", " +
                    d2.origin.description + ")"};
  return out;
}

RegimeSpec RegimeSpec::make(Regime regime, double c) {
  switch (regime) {
    case Regime::I:
      if (!(c >= 0 && c <= 1)) throw ContractViolation("regime I requires c in [0,1]");
      break;
    case Regime::II:
      c = 1.0;
      break;
    case Regime::III:
      if (!(c > 1 && c < 2)) throw ContractViolation("regime III requires c in (1,2)");
      break;
    case Regime::IV:
      c = 2.0;
      break;
  }
  return {regime, c};
}

long long RegimeSpec::edges_for(int n) const {
  const auto x = static_cast<double>(n);
  switch (regime) {
    case Regime::I:
    case Regime::III:
      return std::llround(c * x / 2);
    case Regime::II:
      return n / 2 + static_cast<long long>(std::ceil(std::pow(x, 0.8)));
    case Regime::IV:
      return n + (n > 1 ? static_cast<long long>(std::floor(x / std::log(x))) : 0);
  }
  return 0;
}

Regime parse_regime(const std::string& s) {
  if (s == "I") return Regime::I;
  if (s == "II") return Regime::II;
  if (s == "III") return Regime::III;
  if (s == "IV") return Regime::IV;
  throw ConfigError("unknown regime \"" + s + "\" (expected I, II, III or IV)");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::I:
      return "I";
    case Regime::II:
      return "II";
    case Regime::III:
      return "III";
    case Regime::IV:
      return "IV";
  }
  return "?";
}

RootPolicy parse_root_policy(const std::string& s) {
  if (s == "uniform") return RootPolicy::uniform;
  if (s == "largest_component") return RootPolicy::largest_component;
  if (s == "rest") return RootPolicy::rest;
  if (s == "complex_part") return RootPolicy::complex_part;
  if (s == "non_complex_part") return RootPolicy::non_complex_part;
  if (s == "core") return RootPolicy::core;
  if (s == "kernel") return RootPolicy::kernel;
  throw ConfigError("unknown root policy \"" + s + "\"");
}

std::string root_policy_name(RootPolicy p) {
  switch (p) {
    case RootPolicy::uniform:
      return "uniform";
    case RootPolicy::largest_component:
      return "largest_component";
    case RootPolicy::rest:
      return "rest";
    case RootPolicy::complex_part:
      return "complex_part";
    case RootPolicy::non_complex_part:
      return "non_complex_part";
    case RootPolicy::core:
      return "core";
    case RootPolicy::kernel:
      return "kernel";
  }
  return "?";
}

std::string LimitRecipe::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::gw:
      std::snprintf(buf, sizeof buf, "GW(%.9g)", c);
      return buf;
    case Kind::skeleton:
      return "SK(" + std::to_string(rays) + ")";
    case Kind::mixture:
      std::snprintf(buf, sizeof buf, "%.9g", weight);
      return std::string("mixture(") + buf + ", " + parts[0].describe() + ", " +
             parts[1].describe() + ")";
  }
  return "?";
}

LimitRecipe predicted_limit(const RegimeSpec& spec, RootPolicy policy) {
  if (spec.regime == Regime::I) {
    if (policy == RootPolicy::uniform) return LimitRecipe::gw(spec.c);
    throw UnsupportedCombination("regime I is only covered for the uniform root policy");
  }
  switch (policy) {
    case RootPolicy::largest_component:
    case RootPolicy::complex_part:
      return LimitRecipe::skeleton(1);
    case RootPolicy::rest:
    case RootPolicy::non_complex_part:
      return LimitRecipe::gw(1.0);
    case RootPolicy::core:
      return LimitRecipe::skeleton(2);
    case RootPolicy::kernel:
      return LimitRecipe::skeleton(3);
    case RootPolicy::uniform:
      break;
  }
  switch (spec.regime) {
    case Regime::II:
      return LimitRecipe::gw(1.0);
    case Regime::III:
      return LimitRecipe::mix(spec.c - 1, LimitRecipe::skeleton(1), LimitRecipe::gw(1.0));
    case Regime::IV:
      return LimitRecipe::skeleton(1);
    case Regime::I:
      break;
  }
  throw UnsupportedCombination("no limit law for this combination");
}

double expected_largest_fraction(const RegimeSpec& spec) {
  switch (spec.regime) {
    case Regime::I:
    case Regime::II:
      return 0.0;
    case Regime::III:
      return spec.c - 1;
    case Regime::IV:
      return 1.0;
  }
  return 0.0;
}

BallCode spine_code(int rays, int radius) {
  if (rays < 0 || radius < 0) throw ContractViolation("spine_code: negative argument");
  std::vector<int> parent{-1};
  for (int j = 0; j < rays; ++j) {
    int prev = 0;
    for (int d = 1; d <= radius; ++d) {
      parent.push_back(prev);
      prev = static_cast<int>(parent.size()) - 1;
    }
  }
  return tree_code_from_parents(parent);
}

double cayley_distance_pmf(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) return 0.0;
  double log_p = std::log(k + 1.0) - k * std::log(static_cast<double>(n));
  for (int j = 2; j <= k; ++j) log_p += std::log(static_cast<double>(n - j));
  return std::exp(log_p);
}

LimitDist instantiate(const LimitRecipe& recipe, int radius, const ReferenceOptions& options) {
  switch (recipe.kind) {
    case LimitRecipe::Kind::gw:
      return gw_ball_reference(recipe.c, radius, options.mass_tol);
    case LimitRecipe::Kind::skeleton: {
      Rng rng = derive_seed(options.seed, kReferenceStreamBase + static_cast<std::uint64_t>(recipe.rays));
      return sk_ball_reference(recipe.rays, radius, options.mc_samples, rng);
    }
    case LimitRecipe::Kind::mixture:
      return mixture(recipe.weight, instantiate(recipe.parts[0], radius, options),
                     instantiate(recipe.parts[1], radius, options));
  }
  throw ContractViolation("instantiate: unknown recipe kind");
}

}  // namespace locallim
