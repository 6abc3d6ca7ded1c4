#include "rgperc/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "rgperc/error.hpp"

namespace rgperc::oracle {
namespace {

void require_points(std::size_t points, std::size_t limit, const char* what) {
  if (points > limit) {
    std::ostringstream msg;
    msg << what << ": " << points << " points exceeds the exact-enumeration limit of " << limit;
    throw TooLarge(msg.str());
  }
}

Integer factorial(std::size_t k) {
  Integer out = 1;
  for (std::size_t i = 2; i <= k; ++i) out *= i;
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

void enumerate_into(std::vector<bool>& used, Matching& current, std::vector<Matching>& out) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) {
    out.push_back(current);
    return;
  }
  const auto a = static_cast<std::uint32_t>(first - used.begin());
  used[a] = true;
  for (std::uint32_t b = a + 1; b < used.size(); ++b) {
    if (used[b]) continue;
    used[b] = true;
    current.push_back({a, b});
    enumerate_into(used, current, out);
    current.pop_back();
    used[b] = false;
  }
  used[a] = false;
}

// Normalized law over the enumerated matchings.
std::vector<Rational> matching_probabilities(const std::vector<Matching>& matchings,
                                             const MatchingLaw& law) {
  std::vector<Rational> weights;
  weights.reserve(matchings.size());
  Rational total = 0;
  for (const auto& m : matchings) {
    weights.push_back(law(m));
    if (weights.back() < 0) throw InvalidArgument("matching law returned a negative weight");
    total += weights.back();
  }
  if (total == 0) throw InvalidArgument("matching law has zero total weight");
  for (auto& w : weights) w /= total;
  return weights;
}

std::vector<Rational> powers(const Rational& base, std::size_t up_to) {
  std::vector<Rational> out(up_to + 1, Rational(1));
  for (std::size_t i = 1; i <= up_to; ++i) out[i] = out[i - 1] * base;
  return out;
}

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw InvalidArgument("oracle probability outside [0, 1]");
}

// Largest component order by flood fill over an adjacency bitmask.
std::uint32_t largest_component(std::size_t n, const std::vector<std::uint32_t>& adjacency) {
  std::uint32_t seen = 0;
  std::uint32_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (seen >> v & 1U) continue;
    std::uint32_t component = 1U << v;
    std::uint32_t frontier = component;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (frontier >> u & 1U) next |= adjacency[u];
      }
      frontier = next & ~component;
      component |= next;
    }
    seen |= component;
    best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(__builtin_popcount(component)));
  }
  return best;
}

}  // namespace

MatchingLaw uniform_law() {
  return [](const Matching&) { return Rational(1); };
}

Integer matching_count(std::size_t point_count) {
  if (point_count % 2 != 0) return 0;
  const std::size_t m = point_count / 2;
  return factorial(point_count) / (factorial(m) * (Integer(1) << m));
}

std::vector<Matching> enumerate_matchings(std::size_t point_count) {
  require_points(point_count, kMaxEnumerationPoints, "enumerate_matchings");
  if (point_count % 2 != 0) throw InvalidArgument("odd number of points has no perfect matching");
  std::vector<bool> used(point_count, false);
  Matching current;
  std::vector<Matching> out;
  enumerate_into(used, current, out);
  return out;
}

std::vector<Matching> enumerate_matchings(const DegreeSequence& seq) {
  return enumerate_matchings(static_cast<std::size_t>(seq.total_degree()));
}

Matching canonical(std::span<const PointPair> matching) {
  Matching out;
  out.reserve(matching.size());
  for (auto pair : matching) {
    if (pair.first > pair.second) std::swap(pair.first, pair.second);
    out.push_back(pair);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool BondConditional::uniform() const {
  if (Integer(relabeled.size()) != space_size) return false;
  const Rational expected(Integer(1), space_size);
  return std::all_of(relabeled.begin(), relabeled.end(),
                     [&](const auto& entry) { return entry.second == expected; });
}

bool SubsetConditional::uniform() const {
  if (Integer(subsets.size()) != subset_count) return false;
  const Rational expected(Integer(1), subset_count);
  return std::all_of(subsets.begin(), subsets.end(),
                     [&](const auto& entry) { return entry.second == expected; });
}

std::map<std::vector<std::uint32_t>, BondConditional> exact_bond_conditionals(
    const DegreeSequence& seq, const Rational& p, const MatchingLaw& law) {
  require_points(seq.total_degree(), kMaxConditionalPoints, "exact_bond_conditionals");
  check_probability(p);
  const auto matchings = enumerate_matchings(seq);
  const auto probability = matching_probabilities(matchings, law);
  const auto owner = point_owners(seq);
  const std::size_t m = seq.edge_count();
  const auto keep = powers(p, m);
  const auto drop = powers(1 - p, m);

  std::map<std::vector<std::uint32_t>, BondConditional> out;
  for (std::size_t j = 0; j < matchings.size(); ++j) {
    const auto& matching = matchings[j];
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
      const Rational weight = probability[j] * keep[k] * drop[m - k];
      if (weight == 0) continue;

      Matching survivors;
      std::vector<std::uint32_t> target(seq.n(), 0);
      for (std::size_t e = 0; e < m; ++e) {
        if (!(mask >> e & 1U)) continue;
        survivors.push_back(matching[e]);
        ++target[owner[matching[e].first]];
        ++target[owner[matching[e].second]];
      }

      // Relabel surviving points onto P(target), order-preserving per vertex.
      std::vector<std::uint32_t> surviving_points;
      for (const auto& pair : survivors) {
        surviving_points.push_back(pair.first);
        surviving_points.push_back(pair.second);
      }
      std::sort(surviving_points.begin(), surviving_points.end());
      std::vector<std::uint32_t> offset(seq.n() + 1, 0);
      for (std::size_t v = 0; v < seq.n(); ++v) offset[v + 1] = offset[v] + target[v];
      std::map<std::uint32_t, std::uint32_t> relabel;
      std::vector<std::uint32_t> next(offset.begin(), offset.end() - 1);
      for (const auto point : surviving_points) relabel[point] = next[owner[point]]++;
      Matching relabeled;
      for (const auto& pair : survivors) relabeled.push_back({relabel[pair.first], relabel[pair.second]});

      auto& entry = out[target];
      entry.target = target;
      entry.surviving_edges = k;
      entry.event_probability += weight;
      entry.point_level[canonical(survivors)] += weight;
      entry.relabeled[canonical(relabeled)] += weight;
    }
  }
  for (auto& [target, entry] : out) {
    for (auto& item : entry.point_level) item.second /= entry.event_probability;
    for (auto& item : entry.relabeled) item.second /= entry.event_probability;
    entry.space_size = matching_count(2 * entry.surviving_edges);
  }
  return out;
}

BondConditional exact_bond_conditional(const DegreeSequence& seq, const Rational& p,
                                       const std::vector<std::uint32_t>& target,
                                       const MatchingLaw& law) {
  if (target.size() != seq.n()) {
    throw InvalidArgument("target degree sequence must have one entry per vertex");
  }
  auto all = exact_bond_conditionals(seq, p, law);
  const auto it = all.find(target);
  if (it == all.end()) {
    throw Unreachable("target induced degree sequence has probability zero");
  }
  return std::move(it->second);
}

std::vector<SubsetConditional> exact_survivor_subsets(const DegreeSequence& seq, const Rational& p,
                                                      const MatchingLaw& law) {
  require_points(seq.total_degree(), kMaxConditionalPoints, "exact_survivor_subsets");
  check_probability(p);
  const auto matchings = enumerate_matchings(seq);
  const auto probability = matching_probabilities(matchings, law);
  const std::size_t m = seq.edge_count();
  const auto keep = powers(p, m);
  const auto drop = powers(1 - p, m);

  std::vector<SubsetConditional> out(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    out[k].surviving_edges = k;
    out[k].subset_count = binomial(2 * m, 2 * k);
  }
  for (std::size_t j = 0; j < matchings.size(); ++j) {
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
      const Rational weight = probability[j] * keep[k] * drop[m - k];
      if (weight == 0) continue;
      std::vector<std::uint32_t> subset;
      for (std::size_t e = 0; e < m; ++e) {
        if (!(mask >> e & 1U)) continue;
        subset.push_back(matchings[j][e].first);
        subset.push_back(matchings[j][e].second);
      }
      std::sort(subset.begin(), subset.end());
      out[k].event_probability += weight;
      out[k].subsets[subset] += weight;
    }
  }
  for (auto& entry : out) {
    for (auto& item : entry.subsets) item.second /= entry.event_probability;
  }
  return out;
}

std::map<std::uint32_t, Rational> exact_l1_distribution(const DegreeSequence& seq, const Rational& p,
                                                        PercolationKind kind, const MatchingLaw& law) {
  require_points(seq.total_degree(), kMaxEnumerationPoints, "exact_l1_distribution");
  if (seq.n() > kMaxL1Vertices) {
    std::ostringstream msg;
    msg << "exact_l1_distribution: " << seq.n() << " vertices exceeds the limit of "
        << kMaxL1Vertices;
    throw TooLarge(msg.str());
  }
  if (seq.n() == 0) throw InvalidArgument("exact_l1_distribution needs at least one vertex");
  check_probability(p);
  const auto matchings = enumerate_matchings(seq);
  const auto probability = matching_probabilities(matchings, law);
  const auto owner = point_owners(seq);
  const std::size_t n = seq.n();
  const std::size_t m = seq.edge_count();
  const std::size_t units = kind == PercolationKind::bond ? m : n;
  const auto keep = powers(p, units);
  const auto drop = powers(1 - p, units);

  std::map<std::uint32_t, Rational> out;
  for (std::size_t j = 0; j < matchings.size(); ++j) {
    for (std::uint32_t mask = 0; mask < (1U << units); ++mask) {
      const auto kept = static_cast<std::size_t>(__builtin_popcount(mask));
      const Rational weight = probability[j] * keep[kept] * drop[units - kept];
      if (weight == 0) continue;
      std::vector<std::uint32_t> adjacency(n, 0);
      for (std::size_t e = 0; e < m; ++e) {
        const auto u = owner[matchings[j][e].first];
        const auto v = owner[matchings[j][e].second];
        const bool survives = kind == PercolationKind::bond
                                  ? (mask >> e & 1U) != 0
                                  : ((mask >> u & 1U) != 0 && (mask >> v & 1U) != 0);
        if (!survives) continue;
        adjacency[u] |= 1U << v;
        adjacency[v] |= 1U << u;
      }
      out[largest_component(n, adjacency)] += weight;
    }
  }
  return out;
}

}  // namespace rgperc::oracle
