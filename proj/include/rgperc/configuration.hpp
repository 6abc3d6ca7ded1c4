#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rgperc/degrees.hpp"

namespace rgperc {

/// Two matched half-edges ("points"), by point index.
struct PointPair {
  std::uint32_t first = 0;
  std::uint32_t second = 0;

  auto operator<=>(const PointPair&) const = default;
};

/// Edge between two vertices; u == v is a loop.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// The point set P(d) together with a perfect matching on it. Vertex v owns
/// the contiguous points [first_point(v), first_point(v) + d_v).
class HalfEdgeGraph {
 public:
  /// Throws InvalidArgument unless `matching` covers every point exactly once.
  HalfEdgeGraph(DegreeSequence degrees, std::vector<PointPair> matching);

  std::size_t n() const { return degrees_.n(); }
  std::size_t point_count() const { return owner_.size(); }
  std::size_t edge_count() const { return matching_.size(); }
  const DegreeSequence& degrees() const { return degrees_; }

  std::uint32_t owner(std::uint32_t point) const { return owner_[point]; }
  std::span<const std::uint32_t> owners() const { return owner_; }
  std::uint32_t first_point(std::uint32_t vertex) const { return offsets_[vertex]; }
  std::span<const PointPair> matching() const { return matching_; }

  /// Owner pair of every matched pair, in matching order.
  std::vector<Edge> edges() const;

 private:
  DegreeSequence degrees_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::uint32_t> offsets_;
  std::vector<PointPair> matching_;
};

/// Owner table of P(d): point -> vertex.
std::vector<std::uint32_t> point_owners(const DegreeSequence& seq);

struct MultiEdge {
  std::uint32_t u = 0;  // u <= v
  std::uint32_t v = 0;
  std::uint32_t multiplicity = 0;
};

/// Projection of a matching onto the vertex set.
struct Multigraph {
  std::size_t n = 0;
  /// Sorted by (u, v); loops have u == v and count once per intra-vertex pair.
  std::vector<MultiEdge> edges;
  std::size_t loop_count = 0;
  bool has_loop = false;
  bool has_multi_edge = false;
};

Multigraph project(const HalfEdgeGraph& graph);

struct SimplicityReport {
  bool has_loop = false;
  bool has_multi_edge = false;
  /// (1/M) sum_i C(d_i, 2)
  double lambda = 0.0;
  /// exp(-lambda/2 - lambda^2/4)
  double predicted_simple_prob = 1.0;

  bool simple() const { return !has_loop && !has_multi_edge; }
};

double simplicity_lambda(const DegreeSequence& seq);
double predicted_simple_probability(const DegreeSequence& seq);

SimplicityReport simplicity(const HalfEdgeGraph& graph);
/// Loop/multi-edge test alone, one sort over owner pairs.
bool is_simple(const HalfEdgeGraph& graph);

/// Uniformly random perfect matching on P(seq): shuffle the points, pair
/// consecutive entries. Deterministic in `seed`.
HalfEdgeGraph uniform_matching(const DegreeSequence& seq, std::uint64_t seed);

struct SimpleGraphDraw {
  HalfEdgeGraph graph;
  std::size_t attempts = 0;
};

constexpr std::size_t kDefaultMaxAttempts = 1000;

/// Rejection-samples uniform_matching until the projection is simple. Attempt
/// a uses derive_seed(seed, a). Throws GenerationFailed when exhausted.
SimpleGraphDraw uniform_simple_graph(const DegreeSequence& seq, std::uint64_t seed,
                                     std::size_t max_attempts = kDefaultMaxAttempts);

/// Edge-list dump: header "# n=<n> m=<M>", then one "u v" line per matched
/// pair (loops as "u u"), in matching order.
void write_edge_list(std::ostream& out, const HalfEdgeGraph& graph);

}  // namespace rgperc
