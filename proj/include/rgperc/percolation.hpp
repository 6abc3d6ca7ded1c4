#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgperc/configuration.hpp"
#include "rgperc/degrees.hpp"

namespace rgperc {

enum class PercolationKind { bond, site };

std::string_view to_string(PercolationKind kind);
/// Accepts "bond" or "site"; throws InvalidArgument otherwise.
PercolationKind parse_percolation_kind(std::string_view text);

/// Result of percolating one HalfEdgeGraph.
struct PercolationOutcome {
  PercolationKind kind = PercolationKind::bond;
  double p = 1.0;
  std::size_t n = 0;
  /// M of the source graph.
  std::size_t original_edges = 0;
  /// Surviving matched pairs, a subsequence of the source matching.
  std::vector<PointPair> survivors;
  /// Owner pairs of `survivors`, same order.
  std::vector<Edge> surviving_edges;
  /// d'(n): degree of each vertex counting surviving edges only.
  DegreeSequence induced_degrees;
  /// Site only: deleted[v] != 0 iff vertex v was removed.
  std::vector<std::uint8_t> deleted;
  /// Site only: matched pairs with exactly one deleted owner.
  std::size_t boundary_count = 0;
  /// Site only: total source degree of retained vertices.
  std::size_t retained_degree = 0;

  std::size_t k() const { return survivors.size(); }
};

/// Keeps each matched pair independently iff u < p, one uniform draw per pair
/// in matching order.
PercolationOutcome bond_percolate(const HalfEdgeGraph& graph, double p, std::uint64_t seed);

/// Retains each vertex independently iff u < p, one uniform draw per vertex in
/// index order; then keeps the pairs whose owners are both retained.
PercolationOutcome site_percolate(const HalfEdgeGraph& graph, double p, std::uint64_t seed);

PercolationOutcome percolate(const HalfEdgeGraph& graph, PercolationKind kind, double p,
                             std::uint64_t seed);

/// D_i' for every degree present in d'(n).
std::map<std::uint32_t, std::size_t> induced_degree_counts(const PercolationOutcome& outcome);

/// Surviving-edge counts against their concentration windows:
///   bond: |k - Mp| <= ln(n) sqrt(n)
///   site: |M2 - 2Mp| <= n^{2/3} ln(n),  |b - 2Mp(1-p)| <= n^{2/3} ln(n)^2
struct SurvivorStatistics {
  std::size_t k = 0;
  std::optional<std::size_t> boundary_count;
  std::optional<std::size_t> retained_degree;

  double expected_k = 0.0;
  double k_window = 0.0;
  std::optional<bool> k_in_window;  // bond only

  double expected_retained_degree = 0.0;
  double retained_degree_window = 0.0;
  std::optional<bool> retained_degree_in_window;

  double expected_boundary = 0.0;
  double boundary_window = 0.0;
  std::optional<bool> boundary_in_window;
};

SurvivorStatistics survivor_statistics(const PercolationOutcome& outcome);

}  // namespace rgperc
