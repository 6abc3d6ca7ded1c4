#include "rgperc/percolation.hpp"

#include <cmath>
#include <sstream>

#include "rgperc/error.hpp"
#include "rgperc/rng.hpp"

namespace rgperc {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "retention probability " << p << " outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

DegreeSequence degrees_from_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> degrees(n, 0);
  for (const auto& e : edges) {
    ++degrees[e.u];
    ++degrees[e.v];
  }
  return DegreeSequence(std::move(degrees));
}

}  // namespace

std::string_view to_string(PercolationKind kind) {
  return kind == PercolationKind::bond ? "bond" : "site";
}

PercolationKind parse_percolation_kind(std::string_view text) {
  if (text == "bond") return PercolationKind::bond;
  if (text == "site") return PercolationKind::site;
  throw InvalidArgument("percolation kind must be 'bond' or 'site', got '" + std::string(text) + "'");
}

PercolationOutcome bond_percolate(const HalfEdgeGraph& graph, double p, std::uint64_t seed) {
  check_probability(p);
  PercolationOutcome out;
  out.kind = PercolationKind::bond;
  out.p = p;
  out.n = graph.n();
  out.original_edges = graph.edge_count();

  Engine engine(seed);
  for (const auto& pair : graph.matching()) {
    if (uniform01(engine) < p) {
      out.survivors.push_back(pair);
      out.surviving_edges.push_back({graph.owner(pair.first), graph.owner(pair.second)});
    }
  }
  out.induced_degrees = degrees_from_edges(out.n, out.surviving_edges);
  return out;
}

PercolationOutcome site_percolate(const HalfEdgeGraph& graph, double p, std::uint64_t seed) {
  check_probability(p);
  PercolationOutcome out;
  out.kind = PercolationKind::site;
  out.p = p;
  out.n = graph.n();
  out.original_edges = graph.edge_count();
  out.deleted.assign(out.n, 0);

  Engine engine(seed);
  for (std::size_t v = 0; v < out.n; ++v) {
    if (uniform01(engine) < p) {
      out.retained_degree += graph.degrees()[v];
    } else {
      out.deleted[v] = 1;
    }
  }
  for (const auto& pair : graph.matching()) {
    const Edge e{graph.owner(pair.first), graph.owner(pair.second)};
    const bool u_gone = out.deleted[e.u] != 0;
    const bool v_gone = out.deleted[e.v] != 0;
    if (!u_gone && !v_gone) {
      out.survivors.push_back(pair);
      out.surviving_edges.push_back(e);
    } else if (u_gone != v_gone) {
      ++out.boundary_count;
    }
  }
  out.induced_degrees = degrees_from_edges(out.n, out.surviving_edges);
  return out;
}

PercolationOutcome percolate(const HalfEdgeGraph& graph, PercolationKind kind, double p,
                             std::uint64_t seed) {
  return kind == PercolationKind::bond ? bond_percolate(graph, p, seed)
                                       : site_percolate(graph, p, seed);
}

std::map<std::uint32_t, std::size_t> induced_degree_counts(const PercolationOutcome& outcome) {
  std::map<std::uint32_t, std::size_t> out;
  const auto counts = outcome.induced_degrees.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out[static_cast<std::uint32_t>(i)] = counts[i];
  }
  return out;
}

SurvivorStatistics survivor_statistics(const PercolationOutcome& outcome) {
  SurvivorStatistics s;
  s.k = outcome.k();
  const double n = static_cast<double>(outcome.n);
  const double big_m = static_cast<double>(outcome.original_edges);
  const double p = outcome.p;
  const double log_n = n > 1.0 ? std::log(n) : 0.0;

  if (outcome.kind == PercolationKind::bond) {
    s.expected_k = big_m * p;
    s.k_window = log_n * std::sqrt(n);
    s.k_in_window = std::abs(static_cast<double>(s.k) - s.expected_k) <= s.k_window;
    return s;
  }

  s.expected_k = big_m * p * p;
  s.boundary_count = outcome.boundary_count;
  s.retained_degree = outcome.retained_degree;
  const double n_two_thirds = std::cbrt(n * n);
  s.expected_retained_degree = 2.0 * big_m * p;
  s.retained_degree_window = n_two_thirds * log_n;
  s.retained_degree_in_window =
      std::abs(static_cast<double>(outcome.retained_degree) - s.expected_retained_degree) <=
      s.retained_degree_window;
  s.expected_boundary = 2.0 * big_m * p * (1.0 - p);
  s.boundary_window = n_two_thirds * log_n * log_n;
  s.boundary_in_window =
      std::abs(static_cast<double>(outcome.boundary_count) - s.expected_boundary) <=
      s.boundary_window;
  return s;
}

}  // namespace rgperc
