#include "rgperc/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rgperc/error.hpp"
#include "rgperc/rng.hpp"

namespace rgperc {

std::vector<std::uint32_t> point_owners(const DegreeSequence& seq) {
  std::vector<std::uint32_t> owner;
  owner.reserve(seq.total_degree());
  for (std::uint32_t v = 0; v < seq.n(); ++v) owner.insert(owner.end(), seq[v], v);
  return owner;
}

HalfEdgeGraph::HalfEdgeGraph(DegreeSequence degrees, std::vector<PointPair> matching)
    : degrees_(std::move(degrees)), owner_(point_owners(degrees_)), matching_(std::move(matching)) {
  offsets_.resize(degrees_.n() + 1);
  offsets_[0] = 0;
  for (std::size_t v = 0; v < degrees_.n(); ++v) offsets_[v + 1] = offsets_[v] + degrees_[v];

  if (2 * matching_.size() != owner_.size()) {
    std::ostringstream msg;
    msg << "matching has " << matching_.size() << " pairs but the point set has "
        << owner_.size() << " points";
    throw InvalidArgument(msg.str());
  }
  std::vector<bool> seen(owner_.size(), false);
  for (const auto& pair : matching_) {
    for (const auto point : {pair.first, pair.second}) {
      if (point >= owner_.size() || seen[point]) {
        throw InvalidArgument("matching is not a perfect matching on the point set");
      }
      seen[point] = true;
    }
  }
}

std::vector<Edge> HalfEdgeGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(matching_.size());
  for (const auto& pair : matching_) out.push_back({owner_[pair.first], owner_[pair.second]});
  return out;
}

namespace {

std::vector<Edge> sorted_owner_pairs(const HalfEdgeGraph& graph) {
  auto edges = graph.edges();
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

Multigraph project(const HalfEdgeGraph& graph) {
  Multigraph out;
  out.n = graph.n();
  for (const auto& e : sorted_owner_pairs(graph)) {
    if (e.u == e.v) {
      ++out.loop_count;
      out.has_loop = true;
    }
    if (!out.edges.empty() && out.edges.back().u == e.u && out.edges.back().v == e.v) {
      ++out.edges.back().multiplicity;
      if (e.u != e.v) out.has_multi_edge = true;
    } else {
      out.edges.push_back({e.u, e.v, 1});
    }
  }
  return out;
}

double simplicity_lambda(const DegreeSequence& seq) {
  if (seq.edge_count() == 0) return 0.0;
  double pairs = 0.0;
  for (const auto d : seq.degrees()) pairs += 0.5 * static_cast<double>(d) * (d - 1.0);
  return pairs / static_cast<double>(seq.edge_count());
}

double predicted_simple_probability(const DegreeSequence& seq) {
  const double lambda = simplicity_lambda(seq);
  return std::exp(-lambda / 2.0 - lambda * lambda / 4.0);
}

SimplicityReport simplicity(const HalfEdgeGraph& graph) {
  const auto projected = project(graph);
  SimplicityReport report;
  report.has_loop = projected.has_loop;
  report.has_multi_edge = projected.has_multi_edge;
  report.lambda = simplicity_lambda(graph.degrees());
  report.predicted_simple_prob = predicted_simple_probability(graph.degrees());
  return report;
}

bool is_simple(const HalfEdgeGraph& graph) {
  const auto edges = sorted_owner_pairs(graph);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u == edges[i].v) return false;
    if (i > 0 && edges[i] == edges[i - 1]) return false;
  }
  return true;
}

HalfEdgeGraph uniform_matching(const DegreeSequence& seq, std::uint64_t seed) {
  std::vector<std::uint32_t> points(seq.total_degree());
  std::iota(points.begin(), points.end(), 0U);
  Engine engine(seed);
  shuffle(std::span<std::uint32_t>(points), engine);
  std::vector<PointPair> matching;
  matching.reserve(points.size() / 2);
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    matching.push_back({points[i], points[i + 1]});
  }
  return HalfEdgeGraph(seq, std::move(matching));
}

SimpleGraphDraw uniform_simple_graph(const DegreeSequence& seq, std::uint64_t seed,
                                     std::size_t max_attempts) {
  if (max_attempts == 0) throw InvalidArgument("max_attempts must be at least 1");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto graph = uniform_matching(seq, derive_seed(seed, attempt));
    if (is_simple(graph)) return {std::move(graph), attempt + 1};
  }
  const double predicted = predicted_simple_probability(seq);
  std::ostringstream msg;
  msg << "no simple graph after " << max_attempts
      << " attempts (predicted simplicity probability " << predicted << ")";
  throw GenerationFailed(msg.str(), predicted, max_attempts);
}

void write_edge_list(std::ostream& out, const HalfEdgeGraph& graph) {
  out << "# n=" << graph.n() << " m=" << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace rgperc
