#include "rgperc/components.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace rgperc {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), min_(n) {
  std::iota(parent_.begin(), parent_.end(), 0U);
  std::iota(min_.begin(), min_.end(), 0U);
}

std::uint32_t DisjointSets::find(std::uint32_t v) {
  std::uint32_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const auto next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

bool DisjointSets::unite(std::uint32_t u, std::uint32_t v) {
  auto a = find(u);
  auto b = find(v);
  if (a == b) return false;
  if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  min_[a] = std::min(min_[a], min_[b]);
  return true;
}

ComponentSummary components(std::size_t n, std::span<const Edge> edges) {
  ComponentSummary out;
  if (n == 0) return out;
  DisjointSets sets(n);
  for (const auto& e : edges) {
    if (e.u != e.v) sets.unite(e.u, e.v);
  }

  out.l1_root = std::numeric_limits<std::uint32_t>::max();
  for (std::uint32_t v = 0; v < n; ++v) {
    if (sets.find(v) != v) continue;
    const auto size = sets.size_of(v);
    out.component_sizes.push_back(size);
    const auto smallest = sets.min_vertex(v);
    if (size > out.l1_size || (size == out.l1_size && smallest < out.l1_root)) {
      out.l1_size = size;
      out.l1_root = smallest;
    }
  }
  std::sort(out.component_sizes.begin(), out.component_sizes.end(), std::greater<>());
  out.l2_size = out.component_sizes.size() > 1 ? out.component_sizes[1] : 0;
  out.fraction = static_cast<double>(out.l1_size) / static_cast<double>(n);
  return out;
}

ComponentSummary components(const PercolationOutcome& outcome) {
  return components(outcome.n, outcome.surviving_edges);
}

}  // namespace rgperc
