#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rgperc/analysis.hpp"
#include "rgperc/cli.hpp"
#include "rgperc/components.hpp"
#include "rgperc/configuration.hpp"
#include "rgperc/error.hpp"
#include "rgperc/percolation.hpp"
#include "rgperc/report.hpp"
#include "rgperc/rng.hpp"
#include "rgperc/validation.hpp"

namespace py = pybind11;
using namespace rgperc;

namespace {

// Structured results cross the boundary as JSON, which maps onto plain dicts.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

// Accepts the CLI shorthand ("regular:3", "table:1=0.5,3=0.5", "powerlaw:3.5")
// or the JSON object form used in config files.
DegreeDistribution to_distribution(const py::object& dist) {
  if (py::isinstance<py::str>(dist)) return distribution_from_json(parse_distribution_flag(dist.cast<std::string>()));
  const auto text = py::module_::import("json").attr("dumps")(dist).cast<std::string>();
  return distribution_from_json(nlohmann::json::parse(text));
}

PercolationKind to_kind(const std::string& kind) { return parse_percolation_kind(kind); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bond and site percolation on configuration-model random graphs";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<DivergentMoment>(m, "DivergentMoment", error.ptr());
  py::register_exception<NoTransition>(m, "NoTransition", error.ptr());
  py::register_exception<GenerationFailed>(m, "GenerationFailed", error.ptr());
  py::register_exception<BracketError>(m, "BracketError", error.ptr());

  m.def(
      "generating_derivatives",
      [](const py::object& dist) {
        const auto l = generating_derivatives(to_distribution(dist));
        return py::make_tuple(l.first, l.second);
      },
      py::arg("dist"), "(L'(1), L''(1)) of a degree distribution.");

  m.def(
      "critical_probability",
      [](const py::object& dist, const std::string& kind) { return critical_probability(to_distribution(dist), to_kind(kind)); },
      py::arg("dist"), py::arg("kind") = "bond");

  m.def(
      "lambda_bond", [](const py::object& dist, double p) { return lambda_bond(to_distribution(dist), p).weights(); },
      py::arg("dist"), py::arg("p"));

  m.def(
      "lambda_site",
      [](const py::object& dist, double p) {
        const auto limits = lambda_site(to_distribution(dist), p);
        return py::make_tuple(limits.retained, limits.deleted_mass);
      },
      py::arg("dist"), py::arg("p"), "(retained weights, deleted mass).");

  m.def(
      "q_prime",
      [](const py::object& dist, double p, const std::string& kind) {
        return q_prime(to_distribution(dist), p, to_kind(kind)).closed_form;
      },
      py::arg("dist"), py::arg("p"), py::arg("kind") = "bond");

  m.def(
      "powerlaw_threshold",
      [](double gamma, std::uint32_t min_degree) {
        const auto t = powerlaw_threshold(gamma, min_degree);
        py::dict d;
        d["gamma"] = t.gamma;
        d["zeta_ratio"] = t.zeta_ratio;
        d["truncated_ratio"] = t.truncated_ratio;
        d["gamma0"] = t.gamma0;
        d["valid"] = t.valid;
        return d;
      },
      py::arg("gamma"), py::arg("min_degree") = 2);

  m.def("gamma0", &gamma0, py::arg("tolerance") = 1e-6);

  m.def(
      "generate",
      [](const std::vector<std::uint32_t>& degrees, std::uint64_t seed, bool simple_only) {
        const DegreeSequence seq(degrees);
        const auto graph = simple_only ? uniform_simple_graph(seq, seed).graph : uniform_matching(seq, seed);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (const auto& e : graph.edges()) edges.emplace_back(e.u, e.v);
        return edges;
      },
      py::arg("degrees"), py::arg("seed"), py::arg("simple_only") = false,
      "Edge list of one configuration-model graph, in matching order.");

  m.def(
      "percolate",
      [](const std::vector<std::uint32_t>& degrees, double p, const std::string& kind, std::uint64_t seed) {
        const auto graph = uniform_matching(DegreeSequence(degrees), seed);
        const auto outcome = percolate(graph, to_kind(kind), p, derive_seed(seed, 1));
        auto summary = outcome_summary(outcome, seed);
        summary["components"] = to_json(components(outcome));
        return to_python(summary);
      },
      py::arg("degrees"), py::arg("p"), py::arg("kind") = "bond", py::arg("seed") = 1,
      "Percolate one uniform matching and summarize it with its components.");

  m.def(
      "sweep",
      [](const py::object& dist, std::size_t n, const std::string& kind, const std::vector<double>& p_grid,
         std::size_t trials, std::uint64_t seed, bool simple_only) {
        const auto d = to_distribution(dist);
        TrialOptions options;
        options.simple_only = simple_only;
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = sweep(d, n, to_kind(kind), p_grid, trials, seed, options);
        }
        return to_python(to_json(result));
      },
      py::arg("dist"), py::arg("n"), py::arg("kind") = "bond", py::arg("p_grid") = std::vector<double>{0.0, 0.5, 1.0},
      py::arg("trials") = 20, py::arg("seed") = 1, py::arg("simple_only") = false);

  m.def(
      "estimate_threshold",
      [](const py::object& dist, std::size_t n, const std::string& kind, double epsilon, std::size_t trials,
         double tolerance, std::uint64_t seed) {
        const auto d = to_distribution(dist);
        ThresholdEstimate estimate;
        {
          py::gil_scoped_release release;
          estimate = estimate_threshold(d, n, to_kind(kind), epsilon, trials, tolerance, seed);
        }
        return to_python(to_json(estimate));
      },
      py::arg("dist"), py::arg("n") = 50000, py::arg("kind") = "bond", py::arg("epsilon") = 0.02,
      py::arg("trials") = 20, py::arg("tolerance") = 0.02, py::arg("seed") = 1);

  m.def(
      "validate",
      [](std::uint64_t seed) {
        ValidationOptions options;
        options.seed = seed;
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_validation(options);
        }
        py::list out;
        for (const auto& r : results) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("seed") = 1, "[(name, passed, detail)] for the exact-enumeration checks.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process: (exit code, stdout, stderr).");
}
