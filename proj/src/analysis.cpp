#include "rgperc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "rgperc/components.hpp"
#include "rgperc/rng.hpp"
#include "rgperc/zeta.hpp"

namespace rgperc {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "probability " << p << " outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

DegreeDistribution finite_view(const DegreeDistribution& dist, std::size_t n,
                               const std::optional<std::uint32_t>& cap) {
  if (dist.has_finite_support()) {
    return cap ? truncate_distribution(dist, *cap) : dist;
  }
  return truncate_distribution(dist, cap ? *cap : default_degree_cap(n));
}

}  // namespace

double binomial_pmf(std::uint32_t d, std::uint32_t i, double p) {
  if (i > d) return 0.0;
  if (p == 0.0) return i == 0 ? 1.0 : 0.0;
  if (p == 1.0) return i == d ? 1.0 : 0.0;
  if (d <= 60) {
    double coefficient = 1.0;
    for (std::uint32_t j = 1; j <= i; ++j) coefficient = coefficient * (d - i + j) / j;
    return coefficient * std::pow(p, i) * std::pow(1.0 - p, d - i);
  }
  const double log_pmf = std::lgamma(d + 1.0) - std::lgamma(i + 1.0) - std::lgamma(d - i + 1.0) +
                         i * std::log(p) + (d - i) * std::log1p(-p);
  return std::exp(log_pmf);
}

DegreeDistribution lambda_bond(const DegreeDistribution& dist, double p) {
  check_probability(p);
  std::map<std::uint32_t, double> thinned;
  for (const auto& [degree, w] : dist.weights()) {
    for (std::uint32_t i = 0; i <= degree; ++i) thinned[i] += w * binomial_pmf(degree, i, p);
  }
  return DegreeDistribution::table(std::move(thinned));
}

SiteLimits lambda_site(const DegreeDistribution& dist, double p) {
  SiteLimits out;
  const auto bond = lambda_bond(dist, p);
  for (const auto& [degree, w] : bond.weights()) out.retained[degree] = p * w;
  out.deleted_mass = 1.0 - p;
  return out;
}

QPrime q_prime(const DegreeDistribution& dist, double p, PercolationKind kind) {
  check_probability(p);
  const auto l = generating_derivatives(dist);
  const double bond = p * (p * l.second - l.first);
  QPrime out;
  out.closed_form = kind == PercolationKind::bond ? bond : p * bond;
  if (dist.has_finite_support()) {
    double sum = 0.0;
    const auto thinned = lambda_bond(dist, p);
    for (const auto& [degree, w] : thinned.weights()) {
      const double i = degree;
      sum += i * (i - 2.0) * w;
    }
    out.direct_sum = kind == PercolationKind::bond ? sum : p * sum;
  }
  return out;
}

double critical_probability(const DegreeDistribution& dist, PercolationKind /*kind*/) {
  const auto l = generating_derivatives(dist);
  if (!(l.first > 0.0) || !(l.second > l.first)) {
    std::ostringstream msg;
    msg << "no subcritical-to-supercritical transition in (0,1): L'(1) = " << l.first
        << ", L''(1) = " << l.second << " (requires L''(1) > L'(1) > 0)";
    throw NoTransition(msg.str());
  }
  return l.first / l.second;
}

double q_prime_root(const DegreeDistribution& dist, PercolationKind kind, double tolerance) {
  const auto l = generating_derivatives(dist);
  if (!(l.first > 0.0) || !(l.second > l.first)) {
    throw NoTransition("Q' has no sign change in (0, 1]");
  }
  const auto q = [&](double p) {
    const double bond = p * (p * l.second - l.first);
    return kind == PercolationKind::bond ? bond : p * bond;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ThresholdPrediction predict_threshold(const DegreeDistribution& dist, PercolationKind kind) {
  ThresholdPrediction out;
  out.kind = kind;
  out.derivatives = generating_derivatives(dist);
  out.p_hat = critical_probability(dist, kind);
  out.bisection_root = q_prime_root(dist, kind);
  return out;
}

double gamma0_objective(double gamma) {
  return riemann_zeta(gamma - 2.0) - 2.0 * riemann_zeta(gamma - 1.0);
}

double gamma0(double tolerance) {
  double lo = 3.2;
  double hi = 3.6;
  if (!(gamma0_objective(lo) > 0.0) || !(gamma0_objective(hi) < 0.0)) {
    throw Error("gamma0 bracket [3.2, 3.6] does not straddle a sign change");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (gamma0_objective(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PowerLawThreshold powerlaw_threshold(double gamma, std::uint32_t min_degree) {
  if (!(gamma > 3.0)) {
    std::ostringstream msg;
    msg << "power law with gamma = " << gamma
        << " has divergent L''(1) (gamma <= 3); the critical probability is not defined here";
    throw DivergentMoment(msg.str());
  }
  PowerLawThreshold out;
  out.gamma = gamma;
  const double z1 = riemann_zeta(gamma - 1.0);
  const double z2 = riemann_zeta(gamma - 2.0);
  out.zeta_ratio = z1 / (z2 - z1);
  const auto l = generating_derivatives(DegreeDistribution::power_law({gamma, min_degree}));
  out.truncated_ratio = l.first / l.second;
  out.gamma0 = gamma0();
  out.valid = gamma < out.gamma0;
  return out;
}

std::uint64_t trial_graph_seed(std::uint64_t base_seed, std::size_t point, std::size_t trial) {
  return derive_seed(derive_seed(base_seed, point), trial);
}

TrialRecord run_trial(const DegreeSequence& seq, PercolationKind kind, double p,
                      std::uint64_t graph_seed, const TrialOptions& options) {
  TrialRecord record;
  record.graph_seed = graph_seed;
  try {
    auto draw = options.simple_only
                    ? uniform_simple_graph(seq, graph_seed, options.max_attempts)
                    : SimpleGraphDraw{uniform_matching(seq, graph_seed), 1};
    record.attempts = draw.attempts;
    const auto outcome = percolate(draw.graph, kind, p, derive_seed(graph_seed, 1));
    const auto summary = components(outcome);
    const double n = static_cast<double>(seq.n());
    record.l1_fraction = summary.fraction;
    record.l2_fraction = static_cast<double>(summary.l2_size) / n;
  } catch (const GenerationFailed& e) {
    record.failed = true;
    record.attempts = e.attempts();
    record.error = e.what();
  }
  return record;
}

SweepRow run_point(const DegreeSequence& seq, PercolationKind kind, double p, std::size_t point,
                   std::size_t trials, std::uint64_t base_seed, const TrialOptions& options) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  check_probability(p);
  SweepRow row;
  row.p = p;
  row.records.resize(trials);
  detail::parallel_for(trials, options.threads, [&](std::size_t t) {
    row.records[t] = run_trial(seq, kind, p, trial_graph_seed(base_seed, point, t), options);
    row.records[t].trial = t;
  });

  double sum = 0.0;
  double sum_l2 = 0.0;
  for (const auto& r : row.records) {
    if (r.failed) {
      ++row.failures;
      continue;
    }
    ++row.trials;
    sum += r.l1_fraction;
    sum_l2 += r.l2_fraction;
  }
  if (row.trials > 0) {
    row.mean_l1_fraction = sum / static_cast<double>(row.trials);
    row.mean_l2_fraction = sum_l2 / static_cast<double>(row.trials);
  }
  if (row.trials > 1) {
    double squares = 0.0;
    for (const auto& r : row.records) {
      if (!r.failed) squares += (r.l1_fraction - row.mean_l1_fraction) * (r.l1_fraction - row.mean_l1_fraction);
    }
    row.sd_l1_fraction = std::sqrt(squares / static_cast<double>(row.trials - 1));
  }
  return row;
}

SweepResult sweep(const DegreeDistribution& dist, std::size_t n, PercolationKind kind,
                  const std::vector<double>& p_grid, std::size_t trials, std::uint64_t base_seed,
                  const TrialOptions& options) {
  if (n < 10) throw InvalidArgument("sweep requires n >= 10");
  if (trials == 0) throw InvalidArgument("sweep requires trials >= 1");
  if (p_grid.empty()) throw InvalidArgument("sweep requires a non-empty p grid");
  for (const double p : p_grid) check_probability(p);

  const auto realized = from_distribution(dist, n, options.degree_cap);
  SweepResult result;
  result.distribution = dist.describe();
  result.n = n;
  result.kind = kind;
  result.seed = base_seed;
  result.simple_only = options.simple_only;
  result.warnings = realized.warnings;
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    result.rows.push_back(run_point(realized.sequence, kind, p_grid[j], j, trials, base_seed, options));
  }
  return result;
}

ThresholdEstimate estimate_threshold(const DegreeDistribution& dist, std::size_t n,
                                     PercolationKind kind, double epsilon, std::size_t trials,
                                     double tolerance, std::uint64_t base_seed,
                                     const TrialOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (trials == 0) throw InvalidArgument("trials must be at least 1");

  const auto realized = from_distribution(dist, n, options.degree_cap);
  ThresholdEstimate out;
  const auto probe = [&](double p) {
    const auto row = run_point(realized.sequence, kind, p, out.trace.size(), trials, base_seed, options);
    ThresholdProbe result{p, row.mean_l1_fraction, row.trials > 0 && row.mean_l1_fraction > epsilon};
    out.trace.push_back(result);
    return result.supercritical;
  };

  const bool low_super = probe(0.0);
  const bool high_super = probe(1.0);
  if (low_super || !high_super) {
    std::ostringstream msg;
    msg << "threshold bracket not established: p = 0 is "
        << (low_super ? "supercritical" : "subcritical") << ", p = 1 is "
        << (high_super ? "supercritical" : "subcritical") << " at epsilon = " << epsilon;
    throw BracketError(msg.str(), out.trace);
  }
  while (out.upper - out.lower >= tolerance) {
    const double mid = 0.5 * (out.lower + out.upper);
    if (probe(mid)) {
      out.upper = mid;
    } else {
      out.lower = mid;
    }
  }
  out.estimate = 0.5 * (out.lower + out.upper);
  return out;
}

DegreeLawComparison empirical_vs_analytic(const DegreeDistribution& dist, std::size_t n,
                                          PercolationKind kind, double p, std::size_t trials,
                                          std::uint64_t base_seed, const TrialOptions& options) {
  check_probability(p);
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const auto realized = from_distribution(dist, n, options.degree_cap);
  const auto target = finite_view(dist, n, options.degree_cap);

  std::map<std::uint32_t, double> predicted;
  if (kind == PercolationKind::bond) {
    predicted = lambda_bond(target, p).weights();
  } else {
    const auto site = lambda_site(target, p);
    predicted = site.retained;
    predicted[0] += site.deleted_mass;
  }

  std::vector<std::map<std::uint32_t, std::size_t>> counts(trials);
  detail::parallel_for(trials, options.threads, [&](std::size_t t) {
    const auto seed = trial_graph_seed(base_seed, 0, t);
    const auto graph = options.simple_only
                           ? uniform_simple_graph(realized.sequence, seed, options.max_attempts).graph
                           : uniform_matching(realized.sequence, seed);
    counts[t] = induced_degree_counts(percolate(graph, kind, p, derive_seed(seed, 1)));
  });

  std::map<std::uint32_t, double> empirical;
  for (const auto& trial : counts) {
    for (const auto& [degree, c] : trial) empirical[degree] += static_cast<double>(c);
  }
  for (auto& entry : empirical) entry.second /= static_cast<double>(n) * static_cast<double>(trials);

  DegreeLawComparison out;
  out.kind = kind;
  out.p = p;
  out.trials = trials;
  std::map<std::uint32_t, DegreeLawRow> rows;
  for (const auto& [degree, value] : predicted) rows[degree].predicted = value;
  for (const auto& [degree, value] : empirical) rows[degree].empirical = value;
  for (auto& [degree, row] : rows) {
    row.degree = degree;
    row.deviation = std::abs(row.empirical - row.predicted);
    out.max_deviation = std::max(out.max_deviation, row.deviation);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace rgperc
