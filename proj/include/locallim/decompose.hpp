#pragma once

#include <string>
#include <utility>
#include <vector>

#include "locallim/graph.hpp"

namespace locallim {

// Parts of a graph are graphs on the same label universe 1..n as the input,
// so original labels are retained. A part's vertex set is listed explicitly
// where isolated vertices can belong to it (the non-complex part); for the
// complex part, core and kernel it coincides with the non-isolated vertices.

struct ComplexSplit {
  Graph complex_part;
  Graph non_complex_part;
  std::vector<int> complex_vertices;
  std::vector<int> non_complex_vertices;
};

/// Result of contracting a core's maximal degree-2 paths.
struct KernelResult {
  MultiGraph kernel;                     // vertices 1..v(K)
  std::vector<int> vertex_map;           // kernel vertex i -> label vertex_map[i-1]
  std::vector<std::vector<int>> edge_paths;  // per kernel edge id: interior core vertices
  std::vector<int> subdivision;          // per kernel edge id: edge_paths[id].size()
};

struct Decomposition {
  int n = 0;
  Graph complex_part;
  Graph non_complex_part;
  std::vector<int> complex_vertices;
  std::vector<int> non_complex_vertices;
  Graph core;
  std::vector<int> core_vertices;
  KernelResult kernel;
  std::vector<int> largest;  // largest component of the input graph
};

struct StructureStats {
  long long n = 0, m = 0;
  long long n_U = 0, m_U = 0;  // vertices / edges of the non-complex part
  long long v_Q = 0;           // complex part
  long long v_C = 0;           // core
  long long v_K = 0, e_K = 0;  // kernel
  long long v_L = 0;           // largest component of the whole graph
  long long v_rest_of_Q = 0;   // complex part minus its own largest component
};

ComplexSplit split_complex(const Graph& g);

/// Iterated leaf deletion. Isolated vertices are ignored; every component
/// that has an edge must be complex (e >= v + 1).
Graph core_of(const Graph& q);

/// Contract maximal degree-2 paths. Kernel vertices are numbered by
/// ascending original label. Paths run from the smaller kernel endpoint to
/// the larger; a loop's path starts at its vertex and is oriented so the
/// first interior vertex has the smaller label.
KernelResult kernel_of(const Graph& core);

/// Inverse of kernel_of. `n` is the label universe of the result; 0 means
/// "largest label used".
Graph rebuild_core(const MultiGraph& kernel, const std::vector<std::vector<int>>& edge_paths,
                   const std::vector<int>& vertex_map, int n = 0);

Decomposition decompose(const Graph& g);
StructureStats structure_stats(const Decomposition& d);

std::string stats_csv_header();
std::string stats_csv_row(const StructureStats& s);
/// Debug dump; field names follow the Decomposition members.
std::string decomposition_json(const Decomposition& d);

}  // namespace locallim
