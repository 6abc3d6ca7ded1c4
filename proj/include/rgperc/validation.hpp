#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rgperc/configuration.hpp"
#include "rgperc/oracle.hpp"

namespace rgperc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The sampling path under validation: degree sequence + seed -> matching.
using PairingSampler = std::function<HalfEdgeGraph(const DegreeSequence&, std::uint64_t)>;

struct ValidationOptions {
  std::uint64_t seed = 1;
  PairingSampler sampler = uniform_matching;
  oracle::MatchingLaw law = oracle::uniform_law();
  std::size_t uniformity_draws = 100000;
  std::size_t l1_samples = 1000000;
  std::size_t simplicity_n = 1000;
  std::size_t simplicity_draws = 10000;
};

// Individual checks, each deterministic given its options.
CheckResult check_matching_counts();
CheckResult check_bond_conditional_uniformity(const ValidationOptions& options);
CheckResult check_survivor_subset_uniformity(const ValidationOptions& options);
CheckResult check_sampler_uniformity(const ValidationOptions& options);
CheckResult check_l1_distributions(const ValidationOptions& options);
CheckResult check_simplicity_rate(const ValidationOptions& options);

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

/// One "PASS|FAIL <name>: <detail>" line per check.
void write_validation_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace rgperc
