#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/iostream.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "locallim/ball_code.hpp"
#include "locallim/cli.hpp"
#include "locallim/decompose.hpp"
#include "locallim/errors.hpp"
#include "locallim/experiment.hpp"
#include "locallim/graph.hpp"
#include "locallim/limits.hpp"
#include "locallim/localstats.hpp"
#include "locallim/planarity.hpp"
#include "locallim/plane_tree.hpp"
#include "locallim/rng.hpp"

namespace py = pybind11;
using namespace locallim;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

Graph to_graph(int n, const EdgeList& edges) {
  std::vector<Edge> e(edges.begin(), edges.end());
  return Graph(n, std::move(e));
}

std::pair<int, EdgeList> from_graph(const Graph& g) {
  EdgeList out(g.edges().begin(), g.edges().end());
  return {g.n(), out};
}

std::pair<int, EdgeList> sample(const std::string& sampler, const py::dict& params,
                                std::uint64_t seed, std::uint64_t stream, std::int64_t max_tries) {
  nlohmann::json j = {{"sampler", sampler}};
  for (auto [k, v] : params) {
    auto key = py::str(k).cast<std::string>();
    if (py::isinstance<py::bool_>(v))
      j[key] = v.cast<bool>();
    else if (py::isinstance<py::int_>(v))
      j[key] = v.cast<long long>();
    else if (py::isinstance<py::float_>(v))
      j[key] = v.cast<double>();
    else
      j[key] = py::str(v).cast<std::string>();
  }
  auto spec = sampler_spec_from_json(j);
  validate(spec);
  Rng rng(seed, stream);
  return from_graph(draw(spec, rng, max_tries));
}

py::dict stats(int n, const EdgeList& edges) {
  auto s = structure_stats(decompose(to_graph(n, edges)));
  py::dict d;
  d["n"] = s.n;
  d["m"] = s.m;
  d["n_U"] = s.n_U;
  d["m_U"] = s.m_U;
  d["v_Q"] = s.v_Q;
  d["v_C"] = s.v_C;
  d["v_K"] = s.v_K;
  d["e_K"] = s.e_K;
  d["v_L"] = s.v_L;
  d["v_rest_of_Q"] = s.v_rest_of_Q;
  return d;
}

int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"locallim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  py::scoped_ostream_redirect out(std::cout, py::module_::import("sys").attr("stdout"));
  py::scoped_estream_redirect err(std::cerr, py::module_::import("sys").attr("stderr"));
  return run_cli(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
}

}  // namespace

PYBIND11_MODULE(_locallim, m) {
  m.doc() = "Local limits of sparse random planar graphs: samplers and statistics.";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<EmptyClassError>(m, "EmptyClassError", PyExc_RuntimeError);

  m.def("sample", &sample, py::arg("sampler"), py::arg("params"), py::arg("seed") = 1,
        py::arg("stream") = 0, py::arg("max_tries") = 1'000'000,
        "Draw one graph; returns (n, edges).");
  m.def("structure_stats", &stats, py::arg("n"), py::arg("edges"));
  m.def("is_planar", [](int n, const EdgeList& e) { return is_planar(to_graph(n, e)); });
  m.def("ball_code_hex",
        [](int n, const EdgeList& e, int root, int radius) {
          return ball_code(ball(to_graph(n, e), root, radius)).hex();
        },
        py::arg("n"), py::arg("edges"), py::arg("root"), py::arg("radius"));
  m.def("plane_census",
        [](int n, const EdgeList& e, int radius) {
          std::vector<std::pair<std::string, long long>> out;
          for (const auto& [t, c] : plane_census(to_graph(n, e), radius))
            out.emplace_back(t.to_string(), c);
          return out;
        },
        py::arg("n"), py::arg("edges"), py::arg("radius"));
  m.def("borel_pmf", &borel_pmf, py::arg("k"));
  m.def("gw_plane_prob",
        [](double c, const std::string& code) { return gw_plane_prob(c, PlaneTree::parse(code)); },
        py::arg("c"), py::arg("plane_code"));
  m.def("gw_ball_reference",
        [](double c, int radius, double mass_tol) {
          auto d = gw_ball_reference(c, radius, mass_tol);
          std::vector<std::pair<std::string, double>> out;
          for (const auto& [code, p] : d.mass) out.emplace_back(code.hex(), p);
          return std::make_pair(out, d.leftover);
        },
        py::arg("c"), py::arg("radius"), py::arg("mass_tol") = 1e-4);
  m.def("predicted_limit",
        [](const std::string& regime, double c, const std::string& policy) {
          return predicted_limit(RegimeSpec::make(parse_regime(regime), c), parse_root_policy(policy))
              .describe();
        },
        py::arg("regime"), py::arg("c"), py::arg("policy") = "uniform");
  m.def("run_suite",
        [](const std::string& config_json) {
          py::gil_scoped_release release;
          return to_csv(run_suite(parse_config(config_json)));
        },
        py::arg("config_json"), "Run a suite; returns its CSV.");
  m.def("cli", &cli, py::arg("args"), "Run the command-line tool in-process; returns the exit code.");
}
