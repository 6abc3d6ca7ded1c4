#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgperc/configuration.hpp"
#include "rgperc/degrees.hpp"
#include "rgperc/error.hpp"
#include "rgperc/percolation.hpp"

namespace rgperc {

// ---------------------------------------------------------------------------
// Closed-form predictions
// ---------------------------------------------------------------------------

/// C(d, i) p^i (1-p)^{d-i}
double binomial_pmf(std::uint32_t d, std::uint32_t i, double p);

/// Binomially thinned law lambda_i^bond = sum_{d >= i} lambda_d C(d,i) p^i (1-p)^{d-i}.
/// Requires finite support.
DegreeDistribution lambda_bond(const DegreeDistribution& dist, double p);

/// Per-degree site limits lambda_d^site = p * lambda_d^bond. The retained
/// weights sum to p; the deleted vertices (induced degree 0) carry 1 - p.
struct SiteLimits {
  std::map<std::uint32_t, double> retained;
  double deleted_mass = 0.0;
};

SiteLimits lambda_site(const DegreeDistribution& dist, double p);

/// Q'(p) = sum i(i-2) lambda_i' of the thinned law.
///   bond: p (p L''(1) - L'(1))       site: p^2 (p L''(1) - L'(1))
/// direct_sum is the same quantity summed over the thinned weights and is
/// present only for finite support.
struct QPrime {
  double closed_form = 0.0;
  std::optional<double> direct_sum;
};

QPrime q_prime(const DegreeDistribution& dist, double p, PercolationKind kind);

struct ThresholdPrediction {
  PercolationKind kind = PercolationKind::bond;
  /// L'(1) / L''(1)
  double p_hat = 0.0;
  /// Positive root of Q' located by bisection, for cross-checking p_hat.
  double bisection_root = 0.0;
  GeneratingDerivatives derivatives;
};

/// L'(1)/L''(1), the same for both kinds. Throws NoTransition unless
/// L''(1) > L'(1) > 0.
double critical_probability(const DegreeDistribution& dist, PercolationKind kind);

/// Bisection for the sign change of Q' on (0, 1].
double q_prime_root(const DegreeDistribution& dist, PercolationKind kind, double tolerance = 1e-12);

ThresholdPrediction predict_threshold(const DegreeDistribution& dist, PercolationKind kind);

/// g(gamma) = zeta(gamma - 2) - 2 zeta(gamma - 1); gamma0 is its root above 3.
double gamma0_objective(double gamma);

/// sup{gamma > 3 : zeta(gamma-2)/zeta(gamma-1) > 2}, by bisection over
/// [3.2, 3.6] after checking the bracket signs.
double gamma0(double tolerance = 1e-6);

struct PowerLawThreshold {
  double gamma = 0.0;
  /// zeta(gamma-1) / (zeta(gamma-2) - zeta(gamma-1))
  double zeta_ratio = 0.0;
  /// L'(1)/L''(1) with both sums taken over k >= min_degree.
  double truncated_ratio = 0.0;
  double gamma0 = 0.0;
  /// 3 < gamma < gamma0
  bool valid = false;
};

/// Throws DivergentMoment for gamma <= 3.
PowerLawThreshold powerlaw_threshold(double gamma, std::uint32_t min_degree = 2);

// ---------------------------------------------------------------------------
// Monte Carlo estimators
// ---------------------------------------------------------------------------

struct TrialOptions {
  bool simple_only = false;
  std::optional<std::uint32_t> degree_cap;
  std::size_t max_attempts = kDefaultMaxAttempts;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t graph_seed = 0;
  double l1_fraction = 0.0;
  double l2_fraction = 0.0;
  std::size_t attempts = 1;
  bool failed = false;
  std::string error;
};

struct SweepRow {
  double p = 0.0;
  /// Successful trials.
  std::size_t trials = 0;
  std::size_t failures = 0;
  double mean_l1_fraction = 0.0;
  double sd_l1_fraction = 0.0;
  double mean_l2_fraction = 0.0;
  std::vector<TrialRecord> records;
};

struct SweepResult {
  std::string distribution;
  std::size_t n = 0;
  PercolationKind kind = PercolationKind::bond;
  std::uint64_t seed = 0;
  bool simple_only = false;
  std::vector<std::string> warnings;
  std::vector<SweepRow> rows;
};

/// Graph seed of trial t at grid point j: derive_seed(derive_seed(seed, j), t).
/// The percolation stream is derive_seed(graph_seed, 1). Neither depends on
/// the percolation kind, so bond and site runs see the same graphs.
std::uint64_t trial_graph_seed(std::uint64_t base_seed, std::size_t point, std::size_t trial);

TrialRecord run_trial(const DegreeSequence& seq, PercolationKind kind, double p,
                      std::uint64_t graph_seed, const TrialOptions& options);

/// Runs `trials` independent trials at grid point `point`, reduced in trial order.
SweepRow run_point(const DegreeSequence& seq, PercolationKind kind, double p, std::size_t point,
                   std::size_t trials, std::uint64_t base_seed, const TrialOptions& options);

SweepResult sweep(const DegreeDistribution& dist, std::size_t n, PercolationKind kind,
                  const std::vector<double>& p_grid, std::size_t trials, std::uint64_t base_seed,
                  const TrialOptions& options = {});

struct ThresholdProbe {
  double p = 0.0;
  double mean_l1_fraction = 0.0;
  bool supercritical = false;
};

struct ThresholdEstimate {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<ThresholdProbe> trace;
};

/// The endpoint probes at p = 0 and p = 1 did not straddle epsilon.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, std::vector<ThresholdProbe> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<ThresholdProbe>& trace() const { return trace_; }

 private:
  std::vector<ThresholdProbe> trace_;
};

/// Bisection on p: a probe is supercritical iff the mean |L1|/n over `trials`
/// fresh graphs exceeds epsilon. Stops once the bracket is narrower than
/// `tolerance` and returns its midpoint.
ThresholdEstimate estimate_threshold(const DegreeDistribution& dist, std::size_t n,
                                     PercolationKind kind, double epsilon, std::size_t trials,
                                     double tolerance, std::uint64_t base_seed,
                                     const TrialOptions& options = {});

struct DegreeLawRow {
  std::uint32_t degree = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;
};

struct DegreeLawComparison {
  PercolationKind kind = PercolationKind::bond;
  double p = 0.0;
  std::size_t trials = 0;
  std::vector<DegreeLawRow> rows;
  double max_deviation = 0.0;
};

/// Mean D_i'/n over trials against lambda_i^bond (bond) or p lambda_i^bond
/// plus the deleted mass at degree 0 (site).
DegreeLawComparison empirical_vs_analytic(const DegreeDistribution& dist, std::size_t n,
                                          PercolationKind kind, double p, std::size_t trials,
                                          std::uint64_t base_seed, const TrialOptions& options = {});

}  // namespace rgperc
