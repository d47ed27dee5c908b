#include "locallim/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "locallim/ball_code.hpp"
#include "locallim/decompose.hpp"
#include "locallim/errors.hpp"
#include "locallim/experiment.hpp"
#include "locallim/localstats.hpp"

namespace locallim {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write \"" + path + "\"");
  f << data;
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Sampler parameters accepted on the command line. Only options that were
// given end up in the spec.
struct SamplerOptions {
  int n = 0, t = 0, q = 0, k = 0, subdivide = 0;
  long long m = 0;
  std::int64_t budget = 0;
  std::string kernel, method;
  std::vector<CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts = {app->add_option("--n", n, "vertices"),
            app->add_option("--m", m, "edges"),
            app->add_option("--t", t, "forest roots"),
            app->add_option("--q", q, "complex part size"),
            app->add_option("--k", k, "subdivision vertices"),
            app->add_option("--kernel", kernel, "theta | K4 | figure8"),
            app->add_option("--subdivide", subdivide, "per-edge subdivisions of the kernel"),
            app->add_option("--method", method, "planar: rejection | mcmc"),
            app->add_option("--budget", budget, "planar: tries or MCMC proposals")};
  }

  SamplerSpec spec(const std::string& name) const {
    SamplerSpec s{name, nlohmann::json::object()};
    auto given = [&](std::size_t i) { return opts[i]->count() > 0; };
    if (given(0)) s.params["n"] = n;
    if (given(1)) s.params["m"] = m;
    if (given(2)) s.params["t"] = t;
    if (given(3)) s.params["q"] = q;
    if (given(4)) s.params["k"] = k;
    if (given(5)) s.params["kernel"] = kernel;
    if (given(6)) s.params["subdivide"] = subdivide;
    if (given(7)) s.params["method"] = method;
    if (given(8)) s.params["budget"] = budget;
    return s;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random planar graph local-limit toolkit", "locallim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // sample
  auto* sample = app.add_subcommand("sample", "Draw one graph and print it as an edge list");
  std::string sample_name, sample_out;
  std::uint64_t sample_seed = 1, sample_stream = 0;
  std::int64_t sample_tries = 1'000'000;
  SamplerOptions sample_opts;
  sample->add_option("sampler", sample_name,
                     "cayley | forest | gnm | noncomplex | complexpart | core | planar")
      ->required();
  sample_opts.attach(sample);
  sample->add_option("--seed", sample_seed);
  sample->add_option("--stream", sample_stream);
  sample->add_option("--max-tries", sample_tries);
  sample->add_option("--out", sample_out, "output file (default: standard output)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "Structure statistics of an edge-list file");
  std::string dec_file;
  bool dec_json = false, dec_header = false;
  dec->add_option("file", dec_file)->required();
  dec->add_flag("--json", dec_json, "dump the full decomposition");
  dec->add_flag("--header", dec_header, "print the CSV header first");

  // ball-census
  auto* bc = app.add_subcommand("ball-census", "Count vertices by the plane code of their ball");
  std::string bc_file, bc_tree;
  int bc_radius = 2;
  bc->add_option("file", bc_file)->required();
  bc->add_option("--radius", bc_radius);
  bc->add_option("--tree", bc_tree, "plane code r:d1,d2,...; print only its count");

  // dist
  auto* dist = app.add_subcommand("dist", "Empirical ball distribution");
  std::string dist_source, dist_policy = "uniform", dist_roots;
  int dist_radius = 2;
  std::int64_t dist_n = 1000, dist_tries = 1'000'000;
  std::uint64_t dist_seed = 1;
  bool dist_csv = false;
  SamplerOptions dist_opts;
  dist->add_option("source", dist_source, "sampler name or edge-list file")->required();
  dist_opts.attach(dist);
  dist->add_option("--policy", dist_policy);
  dist->add_option("--radius", dist_radius);
  auto* dist_n_opt = dist->add_option("-N", dist_n, "samples (or root draws for a file)");
  dist->add_option("--seed", dist_seed);
  dist->add_option("--roots", dist_roots, "one | all");
  dist->add_option("--max-tries", dist_tries);
  dist->add_flag("--csv", dist_csv);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a suite from a JSON config");
  std::string exp_file, exp_manifest;
  exp->add_option("config", exp_file)->required();
  exp->add_option("--manifest", exp_manifest, "manifest path (overrides the config)");

  // report
  auto* rep = app.add_subcommand("report", "Re-render the CSV of a manifest");
  std::string rep_file;
  rep->add_option("manifest", rep_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sample) {
      SamplerSpec s = sample_opts.spec(sample_name);
      validate(s);
      Rng rng = derive_seed(sample_seed, sample_stream);
      Graph g = draw(s, rng, sample_tries);
      std::string text = "# " + describe(s) + " seed=" + std::to_string(sample_seed) +
                         " stream=" + std::to_string(sample_stream) + "\n" + to_edge_list(g);
      if (sample_out.empty())
        out << text;
      else
        write_file(sample_out, text);
      return 0;
    }
    if (*dec) {
      Graph g = parse_graph(read_file(dec_file));
      auto d = decompose(g);
      if (dec_json) {
        out << decomposition_json(d) << "\n";
      } else {
        if (dec_header) out << stats_csv_header() << "\n";
        out << stats_csv_row(structure_stats(d)) << "\n";
      }
      return 0;
    }
    if (*bc) {
      if (bc_radius < 0) throw ConfigError("radius must be non-negative");
      Graph g = parse_graph(read_file(bc_file));
      if (!bc_tree.empty()) {
        PlaneTree t = PlaneTree::parse(bc_tree);
        if (t.radius != bc_radius)
          throw ConfigError("plane code radius " + std::to_string(t.radius) +
                            " differs from --radius " + std::to_string(bc_radius));
        out << census(g, bc_radius, t) << "\n";
      } else {
        out << "plane_code,count\n";
        for (const auto& [t, c] : plane_census(g, bc_radius)) out << t.to_string() << ',' << c << "\n";
      }
      return 0;
    }
    if (*dist) {
      RootPolicy policy = parse_root_policy(dist_policy);
      if (dist_radius < 0) throw ConfigError("radius must be non-negative");
      if (dist_n < 1) throw ConfigError("-N must be positive");
      EmpiricalDist d;
      if (std::filesystem::is_regular_file(dist_source)) {
        Graph g = parse_graph(read_file(dist_source));
        Rng roots = derive_seed(dist_seed, kRootStreamBase);
        bool all = dist_roots.empty() ? dist_n_opt->count() == 0 : dist_roots == "all";
        if (all) {
          accumulate(d, g, policy, dist_radius, roots, RootMode::all);
        } else {
          for (std::int64_t i = 0; i < dist_n; ++i)
            if (!accumulate(d, g, policy, dist_radius, roots, RootMode::one)) break;
        }
        d.provenance.sampler = "file:" + dist_source;
      } else {
        SamplerSpec s = dist_opts.spec(dist_source);
        validate(s);
        RootMode mode = dist_roots == "all" ? RootMode::all : RootMode::one;
        if (!dist_roots.empty() && dist_roots != "all" && dist_roots != "one")
          throw ConfigError("--roots must be one or all");
        for (std::int64_t i = 0; i < dist_n; ++i) {
          Rng rng = derive_seed(dist_seed, static_cast<std::uint64_t>(i));
          Rng roots = derive_seed(dist_seed, kRootStreamBase + static_cast<std::uint64_t>(i));
          accumulate(d, draw(s, rng, dist_tries), policy, dist_radius, roots, mode);
        }
        d.provenance.sampler = describe(s);
        d.provenance.parameters = "N=" + std::to_string(dist_n);
      }
      if (d.total == 0) throw EmptyClassError("every sample had an empty root target set");
      d.provenance.seed = dist_seed;
      d.provenance.policy = root_policy_name(policy);
      d.provenance.radius = dist_radius;
      out << (dist_csv ? to_csv(d) : to_json(d) + "\n");
      return 0;
    }
    if (*exp) {
      ExperimentConfig cfg = parse_config(read_file(exp_file));
      const std::string started = utc_now();
      auto t0 = std::chrono::steady_clock::now();
      auto rows = run_suite(cfg);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const std::string csv = to_csv(rows);
      out << csv;
      if (!cfg.output.empty()) write_file(cfg.output, csv);
      std::string manifest = !exp_manifest.empty() ? exp_manifest
                             : !cfg.manifest.empty() ? cfg.manifest
                             : !cfg.output.empty()   ? cfg.output + ".manifest.json"
                                                     : "";
      if (!manifest.empty()) write_file(manifest, manifest_json(cfg, rows, started, secs));
      int code = exit_code_for(rows);
      if (code != 0) err << "some rows failed\n";
      return code;
    }
    if (*rep) {
      auto rows = rows_from_manifest(read_file(rep_file));
      out << to_csv(rows);
      return exit_code_for(rows);
    }
  } catch (const BudgetError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // ConfigError, ContractViolation, UnsupportedCombination
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyClassError& e) {
    err << "empty class: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace locallim
