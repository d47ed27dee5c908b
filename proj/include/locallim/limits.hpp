#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locallim/ball_code.hpp"
#include "locallim/limit_dist.hpp"
#include "locallim/plane_tree.hpp"
#include "locallim/rng.hpp"

namespace locallim {

/// P(radius-r ball of GW(c) equals t as a plane tree):
/// the product over non-boundary vertices of e^{-c} c^{d_i} / d_i!.
double gw_plane_prob(double c, const PlaneTree& t);

/// Borel pmf e^{-k} k^{k-1} / k!, evaluated in log space. k >= 1.
double borel_pmf(std::int64_t k);

/// Calls `visit` for every plane tree of the given radius with exactly
/// `size` vertices, in lexicographic order of the BFS child-count lists.
template <class Visit>
void for_each_plane_tree(int size, int radius, Visit&& visit);

inline constexpr std::int64_t kDefaultEnumerationBudget = 20'000'000;

/// Law of the unlabelled radius-r ball of GW(c): plane trees are enumerated
/// by increasing size and their probabilities summed per unlabelled code,
/// stopping after the first complete size at which the un-enumerated mass
/// drops below `mass_tol`.
LimitDist gw_ball_reference(double c, int radius, double mass_tol,
                            std::int64_t budget = kDefaultEnumerationBudget);

/// Empirical law of the radius-r ball of the Skeleton tree with k rays.
LimitDist sk_ball_reference(int k, int radius, std::int64_t samples, Rng& rng);

/// Pointwise a*d1 + (1-a)*d2.
LimitDist mixture(double a, const LimitDist& d1, const LimitDist& d2);

/// Edge-count regimes of the sparse planar graph.
///   I:   m <= n/2 + O(n^{2/3}), 2m/n -> c in [0,1]
///   II:  m = n/2 + s, s = o(n), s^3 n^{-2} -> infinity
///   III: m = alpha n / 2 with alpha -> c in (1,2)
///   IV:  m = n + o(n) and m <= n + o(n (log n)^{-2/3})
enum class Regime { I, II, III, IV };

struct RegimeSpec {
  Regime regime = Regime::I;
  double c = 0.0;  // limiting average degree; fixed to 1 for II and 2 for IV

  /// Throws ContractViolation if c is outside the regime's range.
  static RegimeSpec make(Regime regime, double c);
  /// Concrete edge count for n vertices:
  ///   I, III: round(c n / 2);  II: n/2 + ceil(n^{0.8});  IV: n + floor(n / ln n).
  long long edges_for(int n) const;
};

Regime parse_regime(const std::string& s);
std::string regime_name(Regime r);

enum class RootPolicy { uniform, largest_component, rest, complex_part, non_complex_part, core, kernel };

RootPolicy parse_root_policy(const std::string& s);
std::string root_policy_name(RootPolicy p);

/// Symbolic limit law: GW(c), SK(k) or a two-part mixture.
struct LimitRecipe {
  enum class Kind { gw, skeleton, mixture };
  Kind kind = Kind::gw;
  double c = 1.0;    // gw
  int rays = 0;      // skeleton
  double weight = 1.0;  // mixture: weight of parts[0]
  std::vector<LimitRecipe> parts;

  static LimitRecipe gw(double c) { return {Kind::gw, c, 0, 1.0, {}}; }
  static LimitRecipe skeleton(int k) { return {Kind::skeleton, 1.0, k, 1.0, {}}; }
  static LimitRecipe mix(double a, LimitRecipe first, LimitRecipe second) {
    return {Kind::mixture, 1.0, 0, a, {std::move(first), std::move(second)}};
  }

  std::string describe() const;
  friend bool operator==(const LimitRecipe&, const LimitRecipe&) = default;
};

/// Throws UnsupportedCombination when no limit theorem covers the pair.
LimitRecipe predicted_limit(const RegimeSpec& regime, RootPolicy policy);

struct ReferenceOptions {
  double mass_tol = 1e-4;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Predicted v(L)/n for the regime: 0 in I and II, c - 1 in III, 1 in IV.
double expected_largest_fraction(const RegimeSpec& spec);

/// Code of the radius-r ball at the centre of k bare rays (no trees attached):
/// the core-level picture of SK(k).
BallCode spine_code(int rays, int radius);

/// P(d_T(u, v) = k) for a uniform labelled tree on n vertices and a uniform
/// pair of distinct vertices: (k+1) n^{-k} prod_{j=2..k} (n-j), 1 <= k <= n-1.
double cayley_distance_pmf(int n, int k);

/// Turns a recipe into a distribution. Skeleton references draw from stream
/// kReferenceStreamBase + rays, so the same SK(k) is reproduced wherever it
/// appears.
LimitDist instantiate(const LimitRecipe& recipe, int radius, const ReferenceOptions& options);

// ---------------------------------------------------------------------------

namespace detail {

template <class Visit>
void plane_tree_rec(std::vector<int>& counts, int radius, int depth, long long level_left,
                    long long next_level, int vertices_left, Visit& visit) {
  if (level_left == 0) {
    if (next_level == 0 || depth + 1 == radius) {
      if (vertices_left == 0) visit(counts);
      return;
    }
    plane_tree_rec(counts, radius, depth + 1, next_level, 0, vertices_left, visit);
    return;
  }
  for (int d = 0; d <= vertices_left; ++d) {
    counts.push_back(d);
    plane_tree_rec(counts, radius, depth, level_left - 1, next_level + d, vertices_left - d,
                   visit);
    counts.pop_back();
  }
}

}  // namespace detail

template <class Visit>
void for_each_plane_tree(int size, int radius, Visit&& visit) {
  if (size < 1) return;
  std::vector<int> counts;
  if (radius == 0) {
    if (size == 1) visit(counts);
    return;
  }
  detail::plane_tree_rec(counts, radius, 0, 1, 0, size - 1, visit);
}

}  // namespace locallim
