#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locallim/ball_code.hpp"
#include "locallim/decompose.hpp"
#include "locallim/graph.hpp"
#include "locallim/limit_dist.hpp"
#include "locallim/limits.hpp"
#include "locallim/plane_tree.hpp"
#include "locallim/rng.hpp"

namespace locallim {

/// Plane code of a tree ball: BFS child counts with children taken in
/// ascending original label. Throws ContractViolation if the ball has a cycle.
PlaneTree plane_code(const RootedBall& ball);

/// Plane codes of many balls of one graph without materialising them.
class PlaneCoder {
 public:
  explicit PlaneCoder(const Graph& g);
  /// nullopt when the induced radius-r ball around v is not a tree.
  std::optional<PlaneTree> operator()(int v, int radius);

 private:
  const Graph* g_;
  std::vector<int> stamp_;
  std::vector<int> parent_;
  std::vector<int> order_;
  int epoch_ = 0;
};

/// Number of vertices whose radius-r ball is a tree with plane code t.
long long census(const Graph& g, int radius, const PlaneTree& t);

/// All plane codes at once: code -> number of vertices. Cyclic balls are
/// not counted.
std::map<PlaneTree, long long> plane_census(const Graph& g, int radius);

/// Vertices eligible as roots under `policy`, sorted.
std::vector<int> policy_targets(const Graph& g, RootPolicy policy);

struct Provenance {
  std::string sampler;
  std::string parameters;
  std::uint64_t seed = 0;
  std::string policy;
  int radius = 0;
};

struct EmpiricalDist {
  std::map<BallCode, std::int64_t> counts;
  std::int64_t total = 0;
  std::int64_t skipped = 0;  // samples whose policy target set was empty
  Provenance provenance;

  void add(const BallCode& code, std::int64_t count = 1);
  void merge(const EmpiricalDist& other);
};

/// One root per graph (the random R-rooted graph) or every vertex of the
/// target set (per-graph census).
enum class RootMode { one, all };

/// Adds the balls of one graph. Returns false (and tallies a skip) when the
/// policy's target set is empty. Balls over the coder's size limit go to
/// the oversize bucket.
bool accumulate(EmpiricalDist& dist, const Graph& g, RootPolicy policy, int radius, Rng& rng,
                RootMode mode = RootMode::one, int size_limit = kDefaultBallLimit);

/// Throws EmptyClassError if every sample was skipped.
EmpiricalDist empirical_dist(std::span<const Graph> samples, RootPolicy policy, int radius,
                             Rng& rng, RootMode mode = RootMode::one);

LimitDist normalized(const EmpiricalDist& d);

/// Half the L1 distance over codes, plus half the leftover difference.
double tv_distance(const LimitDist& a, const LimitDist& b);
double tv_distance(const EmpiricalDist& a, const LimitDist& b);
double tv_distance(const EmpiricalDist& a, const EmpiricalDist& b);

std::string to_json(const EmpiricalDist& d);
/// code,count,frequency rows with header.
std::string to_csv(const EmpiricalDist& d);

}  // namespace locallim
