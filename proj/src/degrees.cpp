#include "rgperc/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rgperc/error.hpp"
#include "rgperc/zeta.hpp"

namespace rgperc {

DegreeSequence::DegreeSequence(std::vector<std::uint32_t> degrees) : degrees_(std::move(degrees)) {
  for (const auto d : degrees_) {
    total_degree_ += d;
    max_degree_ = std::max(max_degree_, d);
  }
  if (total_degree_ % 2 != 0) {
    std::ostringstream msg;
    msg << "degree sequence has odd total degree " << total_degree_;
    throw InvalidArgument(msg.str());
  }
  counts_.assign(static_cast<std::size_t>(max_degree_) + 1, 0);
  for (const auto d : degrees_) ++counts_[d];
}

double PowerLawSpec::normalization() const { return 1.0 / zeta_tail(gamma, min_degree); }

double PowerLawSpec::weight(std::uint32_t k) const {
  if (k < min_degree) return 0.0;
  return normalization() * std::pow(static_cast<double>(k), -gamma);
}

DegreeDistribution DegreeDistribution::regular(std::uint32_t d) { return table({{d, 1.0}}); }

DegreeDistribution DegreeDistribution::table(std::map<std::uint32_t, double> weights) {
  if (weights.empty()) throw InvalidArgument("degree distribution has no support");
  double total = 0.0;
  for (const auto& [degree, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << "negative or non-finite weight " << w << " at degree " << degree;
      throw InvalidArgument(msg.str());
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "degree distribution weights sum to " << total << ", expected 1";
    throw InvalidArgument(msg.str());
  }
  std::erase_if(weights, [](const auto& entry) { return entry.second == 0.0; });
  return DegreeDistribution(Table{std::move(weights)});
}

DegreeDistribution DegreeDistribution::power_law(PowerLawSpec spec) {
  if (!(spec.gamma > 1.0) || !std::isfinite(spec.gamma)) {
    throw InvalidArgument("power-law exponent must exceed 1 to be normalizable");
  }
  if (spec.min_degree == 0) throw InvalidArgument("power-law minimum degree must be at least 1");
  return DegreeDistribution(spec);
}

const std::map<std::uint32_t, double>& DegreeDistribution::weights() const {
  if (const auto* table = std::get_if<Table>(&repr_)) return table->weights;
  throw InvalidArgument("power-law distribution has no finite weight table");
}

double DegreeDistribution::weight(std::uint32_t k) const {
  if (const auto* spec = power_law_spec()) return spec->weight(k);
  const auto& w = std::get<Table>(repr_).weights;
  const auto it = w.find(k);
  return it == w.end() ? 0.0 : it->second;
}

std::uint32_t DegreeDistribution::min_degree() const {
  if (const auto* spec = power_law_spec()) return spec->min_degree;
  return std::get<Table>(repr_).weights.begin()->first;
}

std::string DegreeDistribution::describe() const {
  std::ostringstream out;
  if (const auto* spec = power_law_spec()) {
    out << "powerlaw(gamma=" << spec->gamma << ",min_degree=" << spec->min_degree << ")";
    return out.str();
  }
  out << "table(";
  bool first = true;
  for (const auto& [degree, w] : weights()) {
    out << (first ? "" : ",") << degree << "=" << w;
    first = false;
  }
  out << ")";
  return out.str();
}

GeneratingDerivatives generating_derivatives(const DegreeDistribution& dist) {
  if (const auto* spec = dist.power_law_spec()) {
    const double g = spec->gamma;
    if (!(g > 2.0)) {
      throw DivergentMoment("L'(1) diverges for a power law with gamma <= 2");
    }
    if (!(g > 3.0)) {
      throw DivergentMoment("L''(1) diverges for a power law with gamma <= 3");
    }
    const double c = spec->normalization();
    const std::uint32_t m = spec->min_degree;
    // sum k^{1-g} and sum k^{2-g} over k >= m; k(k-1) k^{-g} = k^{2-g} - k^{1-g}.
    const double first_moment = zeta_tail(g - 1.0, m);
    const double second_moment = zeta_tail(g - 2.0, m);
    return {c * first_moment, c * (second_moment - first_moment)};
  }
  GeneratingDerivatives result;
  for (const auto& [degree, w] : dist.weights()) {
    const double i = degree;
    result.first += i * w;
    result.second += i * (i - 1.0) * w;
  }
  return result;
}

GeneratingDerivatives zeta_form_derivatives(const PowerLawSpec& spec) {
  if (!(spec.gamma > 3.0)) {
    throw DivergentMoment("zeta(gamma - 2) diverges for gamma <= 3");
  }
  const double c = spec.normalization();
  const double z1 = riemann_zeta(spec.gamma - 1.0);
  const double z2 = riemann_zeta(spec.gamma - 2.0);
  return {c * z1, c * (z2 - z1)};
}

double q_value(const DegreeDistribution& dist) {
  const auto l = generating_derivatives(dist);
  return l.second - l.first;
}

double q_value(const DegreeSequence& seq) {
  if (seq.n() == 0) throw InvalidArgument("q_value of an empty degree sequence");
  double sum = 0.0;
  const auto counts = seq.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double d = static_cast<double>(i);
    sum += d * (d - 2.0) * static_cast<double>(counts[i]);
  }
  return sum / static_cast<double>(seq.n());
}

double offspring_mean(const DegreeDistribution& dist) {
  const auto l = generating_derivatives(dist);
  if (!(l.first > 0.0)) throw InvalidArgument("offspring mean undefined: L'(1) = 0");
  return l.second / l.first;
}

DegreeDistribution truncate_distribution(const DegreeDistribution& dist, std::uint32_t cap) {
  std::map<std::uint32_t, double> kept;
  double total = 0.0;
  if (dist.has_finite_support()) {
    for (const auto& [degree, w] : dist.weights()) {
      if (degree <= cap) kept[degree] = w;
    }
  } else {
    for (std::uint32_t k = dist.min_degree(); k <= cap; ++k) kept[k] = dist.weight(k);
  }
  for (const auto& entry : kept) total += entry.second;
  if (kept.empty() || !(total > 0.0)) {
    throw InvalidArgument("degree distribution " + dist.describe() +
                          " lies entirely above the degree cap " + std::to_string(cap));
  }
  for (auto& entry : kept) entry.second /= total;
  return DegreeDistribution::table(std::move(kept));
}

std::uint32_t default_degree_cap(std::size_t n) {
  const auto ninth_power_fits = [n](std::uint64_t c) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < 9; ++i) {
      acc *= c;
      if (acc > n) return false;
    }
    return true;
  };
  auto c = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / 9.0));
  while (c > 0 && !ninth_power_fits(c)) --c;
  while (ninth_power_fits(c + 1)) ++c;
  return static_cast<std::uint32_t>(c);
}

RealizedSequence from_distribution(const DegreeDistribution& dist, std::size_t n,
                                   std::optional<std::uint32_t> cap) {
  if (n == 0) throw InvalidArgument("from_distribution: n must be at least 1");
  RealizedSequence out;

  std::vector<std::pair<std::uint32_t, double>> support;
  if (const auto* spec = dist.power_law_spec()) {
    if (!cap) cap = default_degree_cap(n);
    for (std::uint32_t k = spec->min_degree; k <= *cap; ++k) {
      support.emplace_back(k, spec->weight(k));
    }
  } else {
    for (const auto& [degree, w] : dist.weights()) {
      if (!cap || degree <= *cap) support.emplace_back(degree, w);
    }
  }
  out.cap = cap;

  double kept = 0.0;
  for (const auto& entry : support) kept += entry.second;
  if (support.empty() || !(kept > 0.0)) {
    std::ostringstream msg;
    msg << "degree distribution " << dist.describe() << " lies entirely above the degree cap "
        << (cap ? std::to_string(*cap) : std::string("(none)"));
    throw InvalidArgument(msg.str());
  }
  out.truncated_mass = std::max(0.0, 1.0 - kept);
  if (out.truncated_mass > 1e-12) {
    std::ostringstream msg;
    msg << "degree cap " << *cap << " drops weight " << out.truncated_mass
        << " of the distribution; remaining weights renormalized";
    out.warnings.push_back(msg.str());
  }

  // Largest-remainder rounding of n * lambda_i, ties toward the smaller degree.
  std::vector<std::size_t> counts(support.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double quota = static_cast<double>(n) * support[j].second / kept;
    const double whole = std::floor(quota);
    counts[j] = static_cast<std::size_t>(whole);
    assigned += counts[j];
    remainders.emplace_back(quota - whole, j);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < n; ++r) {
    ++counts[remainders[r % remainders.size()].second];
    ++assigned;
  }
  while (assigned > n) {
    // Floating-point overshoot; remove from the largest count.
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }

  std::vector<std::uint32_t> degrees;
  degrees.reserve(n);
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    degrees.insert(degrees.end(), counts[j], support[j].first);
    total += static_cast<std::uint64_t>(counts[j]) * support[j].first;
  }
  if (total % 2 != 0) {
    // Ascending layout: the last vertex has the maximum degree.
    --degrees.back();
    std::sort(degrees.begin(), degrees.end());
    out.parity_repaired = true;
    out.warnings.push_back("odd total degree repaired by decrementing one maximum-degree vertex");
  }
  out.sequence = DegreeSequence(std::move(degrees));

  const auto realized = out.sequence.counts();
  for (std::size_t i = 0; i < realized.size(); ++i) {
    if (realized[i] > 0) {
      out.empirical[static_cast<std::uint32_t>(i)] =
          static_cast<double>(realized[i]) / static_cast<double>(n);
    }
  }
  if (out.sequence.max_degree() > default_degree_cap(n)) {
    std::ostringstream msg;
    msg << "maximum degree " << out.sequence.max_degree() << " exceeds floor(n^(1/9)) = "
        << default_degree_cap(n);
    out.warnings.push_back(msg.str());
  }
  return out;
}

}  // namespace rgperc
