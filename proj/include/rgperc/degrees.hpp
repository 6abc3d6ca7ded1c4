#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rgperc {

/// Concrete vertex degrees d_1..d_n. The total degree is always even.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<std::uint32_t> degrees);

  std::size_t n() const { return degrees_.size(); }
  std::span<const std::uint32_t> degrees() const { return degrees_; }
  std::uint32_t operator[](std::size_t v) const { return degrees_[v]; }

  /// 2M, the number of half-edges.
  std::uint64_t total_degree() const { return total_degree_; }
  /// M, the number of edges.
  std::uint64_t edge_count() const { return total_degree_ / 2; }
  std::uint32_t max_degree() const { return max_degree_; }

  /// D_i: number of vertices of degree i (0 beyond the maximum degree).
  std::size_t count(std::uint32_t degree) const {
    return degree < counts_.size() ? counts_[degree] : 0;
  }
  /// counts()[i] == D_i for i in [0, max_degree].
  std::span<const std::size_t> counts() const { return counts_; }

  bool operator==(const DegreeSequence& other) const { return degrees_ == other.degrees_; }

 private:
  std::vector<std::uint32_t> degrees_;
  std::vector<std::size_t> counts_;
  std::uint64_t total_degree_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// Power law  lambda_k = c k^{-gamma}  for k >= min_degree.
struct PowerLawSpec {
  double gamma = 3.5;
  std::uint32_t min_degree = 2;

  /// c = 1 / sum_{k >= min_degree} k^{-gamma}.
  double normalization() const;
  double weight(std::uint32_t k) const;
};

/// Limiting degree distribution {lambda_i}: either a finite table or a power
/// law with an analytic tail.
class DegreeDistribution {
 public:
  static DegreeDistribution regular(std::uint32_t d);
  /// Weights must be non-negative and sum to 1 within 1e-9.
  static DegreeDistribution table(std::map<std::uint32_t, double> weights);
  static DegreeDistribution power_law(PowerLawSpec spec);

  bool has_finite_support() const { return std::holds_alternative<Table>(repr_); }
  /// Finite-support weights; throws InvalidArgument for a power law.
  const std::map<std::uint32_t, double>& weights() const;
  /// Null unless this is a power law.
  const PowerLawSpec* power_law_spec() const { return std::get_if<PowerLawSpec>(&repr_); }

  double weight(std::uint32_t k) const;
  std::uint32_t min_degree() const;
  std::string describe() const;

 private:
  struct Table {
    std::map<std::uint32_t, double> weights;
  };
  explicit DegreeDistribution(std::variant<Table, PowerLawSpec> repr) : repr_(std::move(repr)) {}

  std::variant<Table, PowerLawSpec> repr_;
};

/// L'(1) and L''(1) of L(s) = sum lambda_i s^i.
struct GeneratingDerivatives {
  double first = 0.0;
  double second = 0.0;
};

/// Throws DivergentMoment when either sum diverges (power law, gamma <= 3).
GeneratingDerivatives generating_derivatives(const DegreeDistribution& dist);

/// Power-law derivatives written with full zeta values, c*zeta(gamma-1) and
/// c*(zeta(gamma-2) - zeta(gamma-1)), as opposed to the exact sums over
/// k >= min_degree returned by generating_derivatives. The two agree on L''(1)
/// when min_degree == 2 and differ on L'(1) by the dropped k = 1 term.
GeneratingDerivatives zeta_form_derivatives(const PowerLawSpec& spec);

/// Molloy-Reed quantity sum i(i-2) lambda_i, computed as L''(1) - L'(1).
double q_value(const DegreeDistribution& dist);
/// (1/n) sum i(i-2) D_i.
double q_value(const DegreeSequence& seq);

/// Expected number of children of a size-biased vertex, L''(1)/L'(1).
double offspring_mean(const DegreeDistribution& dist);

/// Finite table of the weights at degrees <= cap, renormalized to sum 1.
/// Throws InvalidArgument if nothing survives the cap.
DegreeDistribution truncate_distribution(const DegreeDistribution& dist, std::uint32_t cap);

/// floor(n^{1/9}), computed exactly.
std::uint32_t default_degree_cap(std::size_t n);

struct RealizedSequence {
  DegreeSequence sequence;
  /// D_i / n of the realized sequence.
  std::map<std::uint32_t, double> empirical;
  /// Weight of the distribution above the cap, dropped before rounding.
  double truncated_mass = 0.0;
  std::optional<std::uint32_t> cap;
  bool parity_repaired = false;
  std::vector<std::string> warnings;
};

/// Realizes n vertices with D_i = n * lambda_i by largest-remainder rounding
/// (ties toward the smaller degree). Support above `cap` is dropped and the
/// rest renormalized; a power law without an explicit cap uses
/// default_degree_cap(n). An odd total degree is repaired by decrementing one
/// maximum-degree vertex. Vertices are laid out in ascending degree order.
RealizedSequence from_distribution(const DegreeDistribution& dist, std::size_t n,
                                   std::optional<std::uint32_t> cap = std::nullopt);

}  // namespace rgperc
