#include "rgperc/report.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "rgperc/error.hpp"

namespace rgperc {
namespace {

std::uint32_t parse_degree(std::string_view text) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("invalid degree '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double value = std::stod(s, &used);
    if (used != s.size()) throw InvalidArgument("");
    return value;
  } catch (const std::exception&) {
    throw InvalidArgument("invalid number '" + std::string(text) + "'");
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

}  // namespace

DegreeDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "regular") return DegreeDistribution::regular(j.at("d").get<std::uint32_t>());
    if (kind == "table") {
      std::map<std::uint32_t, double> weights;
      for (const auto& [key, value] : j.at("weights").items()) {
        weights[parse_degree(key)] = value.get<double>();
      }
      return DegreeDistribution::table(std::move(weights));
    }
    if (kind == "powerlaw") {
      PowerLawSpec spec;
      spec.gamma = j.at("gamma").get<double>();
      spec.min_degree = j.value("min_degree", 2U);
      return DegreeDistribution::power_law(spec);
    }
    throw InvalidArgument("unknown distribution kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed distribution: ") + e.what());
  }
}

nlohmann::json distribution_to_json(const DegreeDistribution& dist) {
  if (const auto* spec = dist.power_law_spec()) {
    return {{"kind", "powerlaw"}, {"gamma", spec->gamma}, {"min_degree", spec->min_degree}};
  }
  const auto& weights = dist.weights();
  if (weights.size() == 1 && weights.begin()->second == 1.0) {
    return {{"kind", "regular"}, {"d", weights.begin()->first}};
  }
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [degree, w] : weights) table[std::to_string(degree)] = w;
  return {{"kind", "table"}, {"weights", table}};
}

nlohmann::json parse_distribution_flag(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("distribution flag must look like kind:params, got '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  if (kind == "regular") return {{"kind", "regular"}, {"d", parse_degree(params)}};
  if (kind == "table") {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto entry : split(params, ',')) {
      const auto eq = entry.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("table entry must be degree=weight");
      weights[std::to_string(parse_degree(entry.substr(0, eq)))] = parse_real(entry.substr(eq + 1));
    }
    return {{"kind", "table"}, {"weights", weights}};
  }
  if (kind == "powerlaw") {
    const auto parts = split(params, ':');
    if (parts.size() > 2) throw InvalidArgument("powerlaw takes gamma[:min_degree]");
    nlohmann::json j = {{"kind", "powerlaw"}, {"gamma", parse_real(parts[0])}, {"min_degree", 2}};
    if (parts.size() == 2) j["min_degree"] = parse_degree(parts[1]);
    return j;
  }
  throw InvalidArgument("unknown distribution kind '" + std::string(kind) + "'");
}

nlohmann::json outcome_summary(const PercolationOutcome& outcome, std::uint64_t seed) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [degree, c] : induced_degree_counts(outcome)) counts[std::to_string(degree)] = c;
  nlohmann::json j = {
      {"kind", to_string(outcome.kind)}, {"p", outcome.p},
      {"n", outcome.n},                  {"M", outcome.original_edges},
      {"k", outcome.k()},                {"degree_counts", counts},
      {"seed", seed},
  };
  if (outcome.kind == PercolationKind::site) {
    j["b"] = outcome.boundary_count;
    j["M2"] = outcome.retained_degree;
  }
  return j;
}

nlohmann::json to_json(const ComponentSummary& summary) {
  return {{"component_sizes", summary.component_sizes},
          {"l1_size", summary.l1_size},
          {"l1_root", summary.l1_root},
          {"l2_size", summary.l2_size},
          {"fraction", summary.fraction}};
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : row.records) {
      nlohmann::json record = {{"trial", r.trial},
                               {"graph_seed", r.graph_seed},
                               {"l1_fraction", r.l1_fraction},
                               {"l2_fraction", r.l2_fraction},
                               {"attempts", r.attempts}};
      if (r.failed) record["error"] = r.error;
      records.push_back(std::move(record));
    }
    rows.push_back({{"p", row.p},
                    {"trials", row.trials},
                    {"failures", row.failures},
                    {"mean_l1_frac", row.mean_l1_fraction},
                    {"sd_l1_frac", row.sd_l1_fraction},
                    {"mean_l2_frac", row.mean_l2_fraction},
                    {"records", std::move(records)}});
  }
  return {{"distribution", result.distribution},
          {"n", result.n},
          {"kind", to_string(result.kind)},
          {"seed", result.seed},
          {"simple_only", result.simple_only},
          {"warnings", result.warnings},
          {"rows", std::move(rows)}};
}

nlohmann::json to_json(const ThresholdEstimate& estimate) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& probe : estimate.trace) {
    trace.push_back({{"p", probe.p},
                     {"mean_l1_frac", probe.mean_l1_fraction},
                     {"supercritical", probe.supercritical}});
  }
  return {{"estimate", estimate.estimate},
          {"lower", estimate.lower},
          {"upper", estimate.upper},
          {"trace", std::move(trace)}};
}

nlohmann::json to_json(const DegreeLawComparison& comparison) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : comparison.rows) {
    rows.push_back({{"degree", row.degree},
                    {"empirical", row.empirical},
                    {"predicted", row.predicted},
                    {"deviation", row.deviation}});
  }
  return {{"kind", to_string(comparison.kind)},
          {"p", comparison.p},
          {"trials", comparison.trials},
          {"rows", std::move(rows)},
          {"max_deviation", comparison.max_deviation}};
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, std::string_view config_hash) {
  out << "# n=" << result.n << " kind=" << to_string(result.kind) << " seed=" << result.seed
      << " simple_only=" << (result.simple_only ? "true" : "false")
      << " distribution=" << result.distribution << " config_hash=" << config_hash << '\n';
  out << "p,trials,mean_l1_frac,sd_l1_frac,mean_l2_frac\n";
  for (const auto& row : result.rows) {
    out << format_real(row.p) << ',' << row.trials << ',' << format_real(row.mean_l1_fraction) << ','
        << format_real(row.sd_l1_fraction) << ',' << format_real(row.mean_l2_fraction) << '\n';
  }
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace rgperc
