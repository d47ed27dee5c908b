#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace locallim {

/// Ordered rooted tree truncated at `radius`, stored as the child counts of
/// its non-boundary vertices (depth < radius) in breadth-first order.
struct PlaneTree {
  std::vector<int> child_counts;
  int size = 1;
  int radius = 0;

  /// Builds a tree from BFS child counts, deriving `size`. Throws
  /// ContractViolation if the list does not describe a tree of the given
  /// radius (wrong length for the number of non-boundary vertices).
  static PlaneTree from_child_counts(std::vector<int> counts, int radius);

  /// Parent of every vertex in BFS order (parent[0] = -1) and its depth.
  std::vector<int> parents() const;
  std::vector<int> depths() const;

  /// Text form "r:d1,d2,..." used by the CLI, e.g. "2:2,0,1".
  std::string to_string() const;
  static PlaneTree parse(std::string_view text);

  friend auto operator<=>(const PlaneTree&, const PlaneTree&) = default;
  friend bool operator==(const PlaneTree&, const PlaneTree&) = default;
};

}  // namespace locallim
