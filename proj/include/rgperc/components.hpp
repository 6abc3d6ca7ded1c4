#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rgperc/configuration.hpp"
#include "rgperc/percolation.hpp"

namespace rgperc {

/// Union-find with path compression and union by size. On equal sizes the
/// smaller vertex id becomes the root.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::uint32_t find(std::uint32_t v);
  /// Returns false if u and v were already joined.
  bool unite(std::uint32_t u, std::uint32_t v);
  std::uint32_t size_of(std::uint32_t v) { return size_[find(v)]; }
  /// Smallest vertex id in v's set.
  std::uint32_t min_vertex(std::uint32_t v) { return min_[find(v)]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> min_;
};

struct ComponentSummary {
  /// Component sizes, descending; sums to n.
  std::vector<std::uint32_t> component_sizes;
  std::uint32_t l1_size = 0;
  /// Smallest vertex over all maximum-size components.
  std::uint32_t l1_root = 0;
  std::uint32_t l2_size = 0;
  /// l1_size / n
  double fraction = 0.0;
};

/// Loops and repeated edges never merge anything new and are skipped.
ComponentSummary components(std::size_t n, std::span<const Edge> edges);
ComponentSummary components(const PercolationOutcome& outcome);

}  // namespace rgperc
