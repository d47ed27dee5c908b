#pragma once

#include <span>

#include "locallim/graph.hpp"

namespace locallim {

/// True iff `g` has a plane embedding.
///
/// Pendant trees are pruned first (they never affect planarity), then the
/// remaining 2-core is handed to a linear-time edge-addition test.
bool is_planar(const Graph& g);

/// Same test on a raw simple edge list over 1..n.
bool is_planar(int n, std::span<const Edge> edges);

/// Maximum edge count of a planar graph on n vertices.
long long max_planar_edges(int n);

}  // namespace locallim
