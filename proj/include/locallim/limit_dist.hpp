#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "locallim/ball_code.hpp"

namespace locallim {

struct DistOrigin {
  enum class Kind { analytic, monte_carlo, mixture };
  Kind kind = Kind::analytic;
  std::int64_t samples = 0;  // monte_carlo only
  std::uint64_t seed = 0;    // monte_carlo only
  std::string description;   // e.g. "GW(1) r=2"
};

/// Probability mass over ball codes plus explicit un-enumerated mass.
struct LimitDist {
  std::map<BallCode, double> mass;
  double leftover = 0.0;
  DistOrigin origin;

  double total() const;
  double at(const BallCode& code) const;
};

/// {origin, leftover, entries:[{code, prob}]}; codes hex-encoded, entries
/// ordered by descending prob then code.
std::string to_json(const LimitDist& d);
LimitDist limit_dist_from_json(const std::string& text);

const char* origin_name(DistOrigin::Kind kind);

}  // namespace locallim
