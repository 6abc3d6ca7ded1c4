#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "rgperc/configuration.hpp"
#include "rgperc/degrees.hpp"
#include "rgperc/percolation.hpp"

namespace rgperc::oracle {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Pairs with first < second, ordered by first.
using Matching = std::vector<PointPair>;

/// Unnormalized weight of a matching on P(d). The oracle normalizes over all
/// matchings, so the uniform law is any constant.
using MatchingLaw = std::function<Rational(const Matching&)>;

MatchingLaw uniform_law();

constexpr std::size_t kMaxEnumerationPoints = 10;
constexpr std::size_t kMaxConditionalPoints = 8;
constexpr std::size_t kMaxL1Vertices = 6;

/// (2M)! / (M! 2^M)
Integer matching_count(std::size_t point_count);

/// Every perfect matching on `point_count` points, pairing the smallest
/// unmatched point with each remaining candidate in turn.
/// Throws TooLarge beyond kMaxEnumerationPoints, InvalidArgument for odd counts.
std::vector<Matching> enumerate_matchings(std::size_t point_count);
std::vector<Matching> enumerate_matchings(const DegreeSequence& seq);

/// Exact law of the bond-percolation survivors given d'(n) = target.
struct BondConditional {
  std::vector<std::uint32_t> target;
  std::size_t surviving_edges = 0;
  /// P[d'(n) = target]
  Rational event_probability;
  /// Survivor matching relabeled onto P(target): vertex v's surviving points,
  /// in increasing order, map to P(target)'s points of v.
  std::map<Matching, Rational> relabeled;
  /// Survivor matching on the original points.
  std::map<Matching, Rational> point_level;
  /// (2k)! / (k! 2^k)
  Integer space_size;

  /// Every matching on P(target) occurs with probability exactly 1/space_size.
  bool uniform() const;
};

/// Conditional laws for every reachable d'(n). Requires 2M <= 8.
std::map<std::vector<std::uint32_t>, BondConditional> exact_bond_conditionals(
    const DegreeSequence& seq, const Rational& p, const MatchingLaw& law = uniform_law());

/// Throws Unreachable when P[d'(n) = target] = 0.
BondConditional exact_bond_conditional(const DegreeSequence& seq, const Rational& p,
                                       const std::vector<std::uint32_t>& target,
                                       const MatchingLaw& law = uniform_law());

/// Exact law of the surviving point set C given |C| = 2k.
struct SubsetConditional {
  std::size_t surviving_edges = 0;
  Rational event_probability;
  /// Sorted point subsets.
  std::map<std::vector<std::uint32_t>, Rational> subsets;
  /// C(2M, 2k)
  Integer subset_count;

  /// Every 2k-subset occurs with probability exactly 1/subset_count.
  bool uniform() const;
};

/// One entry per k = 0..M. Requires 2M <= 8.
std::vector<SubsetConditional> exact_survivor_subsets(const DegreeSequence& seq, const Rational& p,
                                                      const MatchingLaw& law = uniform_law());

/// Exact distribution of |L1| over all matchings and all deletion patterns.
/// Requires 2M <= 10 and n <= 6.
std::map<std::uint32_t, Rational> exact_l1_distribution(const DegreeSequence& seq, const Rational& p,
                                                        PercolationKind kind,
                                                        const MatchingLaw& law = uniform_law());

/// Canonical form of a HalfEdgeGraph's matching (pairs sorted inside and across).
Matching canonical(std::span<const PointPair> matching);

}  // namespace rgperc::oracle
