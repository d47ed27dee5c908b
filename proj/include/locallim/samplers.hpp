#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locallim/graph.hpp"
#include "locallim/plane_tree.hpp"
#include "locallim/rng.hpp"

namespace locallim {

/// Forest on 1..n with `roots` components; vertices 1..roots lie in
/// pairwise distinct components.
struct RootedForest {
  Graph graph;
  int roots = 0;
};

/// Tree on 1..len+2 encoded by a Prüfer sequence over 0-based symbols.
/// Returns 0-based edges.
std::vector<Edge> decode_pruefer(std::span<const int> sequence);

Graph sample_cayley_tree(int n, Rng& rng);

/// Uniform over the t * n^(n-t-1) rooted forests F(n, t).
///
/// Roots are merged into one super-root s. A Prüfer sequence over
/// {s, t+1..n} is drawn with weight t on s and weight 1 elsewhere, decoded,
/// and every edge at s is handed to an independent uniform root.
RootedForest sample_forest(int n, int t, Rng& rng);

/// First `radius` generations of a Poisson(c) Galton-Watson tree, grown
/// breadth-first as a plane tree.
PlaneTree sample_gw_ball(double c, int radius, Rng& rng);

/// Total progeny of a Poisson(c) GW tree, c <= 1. nullopt when the
/// population exceeds `cap` before extinction.
std::optional<std::int64_t> sample_gw_total(double c, std::int64_t cap, Rng& rng);

/// The plane tree as a graph: vertex i is the i-th vertex in BFS order, so
/// the root is 1 and ascending labels reproduce the child order.
Graph plane_tree_graph(const PlaneTree& t);

/// Radius-`radius` ball at the root of the Skeleton tree with k rays.
RootedBall sample_skeleton_ball(int k, int radius, Rng& rng);

Graph sample_gnm(int n, long long m, Rng& rng);

/// Uniform graph with no complex component, by rejection from G(n, m).
Graph sample_noncomplex(int n, long long m, std::int64_t max_tries, Rng& rng);

/// Uniform complex graph on 1..q whose core is `core` placed on labels
/// 1..v(core): a uniform F(q, v(core)) with forest root i identified with
/// core vertex i.
Graph sample_complexpart(const Graph& core, int q, Rng& rng);

/// Uniform core on 1..v(K)+k with kernel `kernel` (kernel vertex i keeps
/// label i; subdivision vertices are v(K)+1..v(K)+k).
///
/// The k labels are spread over the kernel edges as ordered sequences, every
/// arrangement equally likely; outcomes that are not simple graphs (two
/// bare parallel edges, or a loop with fewer than two interior vertices)
/// are rejected. Each labelled core arises from the same number of
/// arrangements, so acceptance is exactly uniform.
Graph sample_core_given_kernel(const MultiGraph& kernel, int k, std::int64_t max_tries, Rng& rng);

enum class PlanarMethod { rejection, mcmc };

struct PlanarSample {
  Graph graph;
  bool approximate = false;  // true for MCMC output
  std::int64_t accepted_moves = 0;
};

/// Rejection: G(n, m) until planar (budget = max tries), exactly uniform.
/// MCMC: edge-swap chain started from a fixed planar graph, `budget`
/// proposals; stationary law is uniform but mixing is unproven.
PlanarSample sample_planar(int n, long long m, PlanarMethod method, std::int64_t budget,
                           Rng& rng);

/// Continue an MCMC chain from `state` for `steps` proposals.
PlanarSample planar_mcmc_steps(const Graph& state, std::int64_t steps, Rng& rng);

/// Planar graph with m edges used as the MCMC start state.
Graph planar_start_state(int n, long long m);

}  // namespace locallim
