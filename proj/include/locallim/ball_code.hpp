#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "locallim/graph.hpp"
#include "locallim/plane_tree.hpp"

namespace locallim {

/// Canonical byte string of a rooted graph up to root-preserving
/// isomorphism. Tree codes start with 'T' followed by the AHU parenthesis
/// string; other balls start with 'G'. The single byte "X" is the bucket for
/// balls too large to encode.
struct BallCode {
  std::string bytes;
  bool is_tree = false;

  std::string hex() const;
  static BallCode from_hex(std::string_view hex);
  static BallCode oversize() { return {"X", false}; }

  friend bool operator==(const BallCode& a, const BallCode& b) { return a.bytes == b.bytes; }
  friend auto operator<=>(const BallCode& a, const BallCode& b) { return a.bytes <=> b.bytes; }
};

inline constexpr int kDefaultBallLimit = 64;

/// Throws OversizeError when a ball that is not a tree has more than
/// `limit` vertices. Tree balls are encoded at any size.
BallCode ball_code(const RootedBall& b, int limit = kDefaultBallLimit);

/// Unlabelled code of a plane tree (child order forgotten).
BallCode tree_code(const PlaneTree& t);

/// Code of the rooted tree given by a parent array (parent[root] = -1).
BallCode tree_code_from_parents(const std::vector<int>& parent);

}  // namespace locallim
