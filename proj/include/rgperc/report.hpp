#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rgperc/analysis.hpp"
#include "rgperc/components.hpp"
#include "rgperc/degrees.hpp"
#include "rgperc/percolation.hpp"

namespace rgperc {

/// {"kind":"regular","d":3} | {"kind":"table","weights":{"1":0.5,"3":0.5}}
/// | {"kind":"powerlaw","gamma":3.5,"min_degree":2}
DegreeDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const DegreeDistribution& dist);

/// Short form used on the command line: "regular:3", "table:1=0.5,3=0.5",
/// "powerlaw:3.5" or "powerlaw:3.5:2" (gamma, minimum degree).
nlohmann::json parse_distribution_flag(std::string_view text);

/// {kind, p, n, M, k, b?, M2?, degree_counts, seed}
nlohmann::json outcome_summary(const PercolationOutcome& outcome, std::uint64_t seed);
nlohmann::json to_json(const ComponentSummary& summary);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const ThresholdEstimate& estimate);
nlohmann::json to_json(const DegreeLawComparison& comparison);

/// Columns p,trials,mean_l1_frac,sd_l1_frac,mean_l2_frac after one
/// "# key=value ..." metadata line.
void write_sweep_csv(std::ostream& out, const SweepResult& result, std::string_view config_hash);

/// FNV-1a 64 of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace rgperc
