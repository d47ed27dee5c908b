#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locallim/graph.hpp"
#include "locallim/limits.hpp"
#include "locallim/rng.hpp"

namespace locallim {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Samplers addressed by name, shared by the CLI and the suites.
//
//   cayley       n
//   forest       n t
//   gnm          n m
//   noncomplex   n m
//   complexpart  kernel subdivide q      core = kernel with every edge subdivided
//   core         kernel k
//   planar       n m method budget      method: rejection | mcmc

struct SamplerSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

/// {"sampler": name, ...params}. Throws ConfigError.
SamplerSpec sampler_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SamplerSpec& s);

/// Checks names and parameter ranges: ConfigError for unknown samplers or
/// missing parameters, ContractViolation for out-of-range values.
void validate(const SamplerSpec& s);
Graph draw(const SamplerSpec& s, Rng& rng, std::int64_t max_tries);
/// "n=4 m=2" style summary, keys in sorted order.
std::string describe(const SamplerSpec& s);

/// theta (2 vertices, 3 parallel edges), K4, figure8 (one vertex, two loops).
MultiGraph named_kernel(const std::string& name);
/// Core with every kernel edge subdivided `per_edge` times; kernel vertex i
/// keeps label i, subdivision labels follow in edge order.
Graph subdivided_core(const MultiGraph& kernel, int per_edge);

/// Every outcome of a sampler, by brute force over edge subsets. Only for
/// tiny vertex counts (at most 11 labels); UnsupportedCombination otherwise.
std::vector<Graph> enumerate_class(const SamplerSpec& s);

/// Bitmask over the pairs of 1..n (n <= 11).
std::uint64_t edge_key(const Graph& g);

/// Mean total variation between a uniform law on k outcomes and the
/// empirical law of N draws from it (exact binomial mean deviations).
double expected_uniform_tv(std::int64_t k, std::int64_t draws);

// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string suite;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> replicates;
  std::optional<int> radius;
  std::optional<RootPolicy> policy;
  std::vector<int> n;
  std::optional<RegimeSpec> regime;
  nlohmann::json params = nlohmann::json::object();
  std::optional<double> tolerance;
  std::int64_t max_tries = 1'000'000;
  std::string output;    // CSV path; empty = stdout only
  std::string manifest;  // manifest path; empty = <output>.manifest.json
  nlohmann::json source = nlohmann::json::object();  // the document as given
};

/// Throws ConfigError on malformed documents and unknown suites.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig parse_config(const std::string& text);

std::vector<std::string> known_suites();
/// FNV-1a 64 of the canonical (sorted-key) dump of the source document.
std::string config_hash(const ExperimentConfig& c);

struct ReportRow {
  std::string suite;
  std::string parameters;
  std::string statistic;
  double observed = 0;
  double reference = 0;
  double tolerance = 0;
  bool pass = false;
  double runtime = 0;  // seconds; manifest only
  std::uint64_t seed = 0;
  std::string reason;
};

std::vector<ReportRow> run_suite(const ExperimentConfig& c);

/// suite,parameters,statistic,observed,reference,tolerance,pass,seed,reason
std::string csv_header();
std::string to_csv(const std::vector<ReportRow>& rows);

std::string manifest_json(const ExperimentConfig& c, const std::vector<ReportRow>& rows,
                          const std::string& started, double runtime);
std::vector<ReportRow> rows_from_manifest(const std::string& text);

/// 0 all pass, 1 a failed row, 3 a row failed for budget reasons.
int exit_code_for(const std::vector<ReportRow>& rows);

}  // namespace locallim
