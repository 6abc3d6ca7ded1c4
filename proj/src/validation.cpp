#include "rgperc/validation.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "rgperc/components.hpp"
#include "rgperc/percolation.hpp"
#include "rgperc/rng.hpp"

namespace rgperc {
namespace {

using oracle::Rational;

const std::vector<std::vector<std::uint32_t>>& conditional_fixtures() {
  static const std::vector<std::vector<std::uint32_t>> fixtures = {
      {1, 1}, {2}, {2, 2}, {1, 1, 1, 1}, {3, 3}, {1, 2, 1, 2}, {2, 2, 2},
      {3, 1, 2, 2}, {2, 2, 2, 2}, {4, 4}, {1, 1, 1, 1, 1, 1, 1, 1}, {3, 3, 1, 1},
  };
  return fixtures;
}

const std::vector<Rational>& conditional_probabilities() {
  static const std::vector<Rational> ps = {Rational(1, 3), Rational(3, 5)};
  return ps;
}

std::string describe(const std::vector<std::uint32_t>& degrees) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
  out << ']';
  return out.str();
}

struct L1Fixture {
  std::vector<std::uint32_t> degrees;
  Rational p;
  PercolationKind kind;
};

}  // namespace

CheckResult check_matching_counts() {
  CheckResult result{"matching_counts", true, ""};
  std::ostringstream detail;
  for (std::size_t points = 0; points <= oracle::kMaxEnumerationPoints; points += 2) {
    const auto matchings = oracle::enumerate_matchings(points);
    const std::set<oracle::Matching> distinct(matchings.begin(), matchings.end());
    const auto expected = oracle::matching_count(points);
    const bool ok = oracle::Integer(matchings.size()) == expected && distinct.size() == matchings.size();
    result.passed = result.passed && ok;
    detail << (points ? " " : "") << "2M=" << points << ":" << matchings.size() << "/" << expected;
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_bond_conditional_uniformity(const ValidationOptions& options) {
  CheckResult result{"bond_conditional_uniform", true, ""};
  std::size_t events = 0;
  std::ostringstream failures;
  for (const auto& degrees : conditional_fixtures()) {
    const DegreeSequence seq(degrees);
    for (const auto& p : conditional_probabilities()) {
      for (const auto& [target, conditional] : oracle::exact_bond_conditionals(seq, p, options.law)) {
        ++events;
        if (!conditional.uniform()) {
          result.passed = false;
          failures << " seq=" << describe(degrees) << " p=" << p << " d'=" << describe(target);
        }
      }
    }
  }
  std::ostringstream detail;
  detail << events << " conditioning events exactly uniform";
  if (!result.passed) detail.str("non-uniform:" + failures.str());
  result.detail = detail.str();
  return result;
}

CheckResult check_survivor_subset_uniformity(const ValidationOptions& options) {
  CheckResult result{"survivor_subset_uniform", true, ""};
  std::size_t events = 0;
  std::ostringstream failures;
  for (const auto& degrees : conditional_fixtures()) {
    const DegreeSequence seq(degrees);
    for (const auto& p : conditional_probabilities()) {
      for (const auto& conditional : oracle::exact_survivor_subsets(seq, p, options.law)) {
        ++events;
        if (!conditional.uniform()) {
          result.passed = false;
          failures << " seq=" << describe(degrees) << " p=" << p << " k=" << conditional.surviving_edges;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << events << " values of k exactly uniform over 2k-subsets";
  if (!result.passed) detail.str("non-uniform:" + failures.str());
  result.detail = detail.str();
  return result;
}

CheckResult check_sampler_uniformity(const ValidationOptions& options) {
  CheckResult result{"sampler_matching_uniform", true, ""};
  std::ostringstream detail;
  const std::vector<std::vector<std::uint32_t>> fixtures = {{2, 2}, {3, 3}, {1, 2, 3}, {2, 2, 2, 2, 2}};
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const DegreeSequence seq(fixtures[f]);
    const auto matchings = oracle::enumerate_matchings(seq);
    std::map<oracle::Matching, std::size_t> observed;
    for (const auto& m : matchings) observed[m] = 0;
    bool foreign = false;
    for (std::size_t draw = 0; draw < options.uniformity_draws; ++draw) {
      const auto graph = options.sampler(seq, derive_seed(derive_seed(options.seed, f), draw));
      const auto it = observed.find(oracle::canonical(graph.matching()));
      if (it == observed.end()) {
        foreign = true;
        break;
      }
      ++it->second;
    }
    const double expected = static_cast<double>(options.uniformity_draws) / static_cast<double>(matchings.size());
    double chi2 = 0.0;
    for (const auto& [m, count] : observed) chi2 += (count - expected) * (count - expected) / expected;
    const double df = static_cast<double>(matchings.size() - 1);
    const double critical = df > 0 ? boost::math::quantile(boost::math::chi_squared(df), 0.999) : 0.0;
    const bool ok = !foreign && (df == 0 || chi2 <= critical);
    result.passed = result.passed && ok;
    detail << (f ? " " : "") << describe(fixtures[f]) << ":chi2=" << chi2 << "/crit=" << critical
           << (foreign ? "(invalid matching)" : "");
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_l1_distributions(const ValidationOptions& options) {
  CheckResult result{"l1_distribution_tv", true, ""};
  const std::vector<L1Fixture> fixtures = {
      {{1, 1}, Rational(3, 10), PercolationKind::bond},
      {{2, 2, 2}, Rational(1, 2), PercolationKind::bond},
      {{1, 2, 2, 1}, Rational(3, 5), PercolationKind::site},
      {{3, 3, 2, 2}, Rational(1, 2), PercolationKind::bond},
      {{1, 1, 2, 2, 2, 2}, Rational(2, 3), PercolationKind::site},
  };
  std::ostringstream detail;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& fixture = fixtures[f];
    const DegreeSequence seq(fixture.degrees);
    const auto exact = oracle::exact_l1_distribution(seq, fixture.p, fixture.kind, options.law);
    const double p = static_cast<double>(fixture.p);
    std::map<std::uint32_t, std::size_t> counts;
    const std::uint64_t stream = derive_seed(options.seed, 1000 + f);
    for (std::size_t s = 0; s < options.l1_samples; ++s) {
      const auto graph_seed = derive_seed(stream, s);
      const auto graph = options.sampler(seq, graph_seed);
      const auto outcome = percolate(graph, fixture.kind, p, derive_seed(graph_seed, 1));
      ++counts[components(outcome).l1_size];
    }
    std::set<std::uint32_t> sizes;
    for (const auto& entry : exact) sizes.insert(entry.first);
    for (const auto& entry : counts) sizes.insert(entry.first);
    double tv = 0.0;
    for (const auto size : sizes) {
      const auto e = exact.find(size);
      const double exact_p = e == exact.end() ? 0.0 : static_cast<double>(e->second);
      const auto c = counts.find(size);
      const double sampled = c == counts.end() ? 0.0 : static_cast<double>(c->second) / static_cast<double>(options.l1_samples);
      tv += std::abs(exact_p - sampled);
    }
    tv *= 0.5;
    const bool ok = tv <= 0.01;
    result.passed = result.passed && ok;
    detail << (f ? " " : "") << describe(fixture.degrees) << "/" << to_string(fixture.kind)
           << "/p=" << fixture.p << ":tv=" << tv;
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_simplicity_rate(const ValidationOptions& options) {
  CheckResult result{"simplicity_rate", true, ""};
  const DegreeSequence seq(std::vector<std::uint32_t>(options.simplicity_n, 3));
  std::size_t simple = 0;
  for (std::size_t draw = 0; draw < options.simplicity_draws; ++draw) {
    if (is_simple(options.sampler(seq, derive_seed(derive_seed(options.seed, 2000), draw)))) ++simple;
  }
  const double fraction = static_cast<double>(simple) / static_cast<double>(options.simplicity_draws);
  const double predicted = predicted_simple_probability(seq);
  result.passed = std::abs(fraction - predicted) <= 0.02;
  std::ostringstream detail;
  detail << "3-regular n=" << options.simplicity_n << " simple fraction " << fraction
         << " vs predicted " << predicted << " (tolerance 0.02)";
  result.detail = detail.str();
  return result;
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  return {
      check_matching_counts(),
      check_bond_conditional_uniformity(options),
      check_survivor_subset_uniformity(options),
      check_sampler_uniformity(options),
      check_l1_distributions(options),
      check_simplicity_rate(options),
  };
}

void write_validation_report(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
}

}  // namespace rgperc
