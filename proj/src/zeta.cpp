#include "rgperc/zeta.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "rgperc/error.hpp"

namespace rgperc {
namespace {

// B_{2j} / (2j)! for j = 1..7.
constexpr std::array<double, 7> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
};

constexpr std::uint32_t kDirectTerms = 32;

}  // namespace

double zeta_tail(double s, std::uint32_t from) {
  if (!(s > 1.0)) {
    std::ostringstream msg;
    msg << "zeta(" << s << ") diverges (argument must exceed 1)";
    throw DivergentMoment(msg.str());
  }
  if (from == 0) throw InvalidArgument("zeta_tail: summation must start at k >= 1");

  // Direct summation up to N - 1, Euler-Maclaurin for the remainder from N.
  const std::uint32_t cutoff = std::max(from, kDirectTerms);
  double direct = 0.0;
  for (std::uint32_t k = cutoff - 1; k >= from && k > 0; --k) {
    direct += std::pow(static_cast<double>(k), -s);
  }

  const double big_n = cutoff;
  double tail = std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);
  // rising = s (s+1) ... (s+2j-2), power = N^{-s-2j+1}
  double rising = s;
  double power = std::pow(big_n, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    tail += kBernoulliOverFactorial[j] * rising * power;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (s + m - 1.0) * (s + m);
    power /= big_n * big_n;
  }
  return direct + tail;
}

double riemann_zeta(double s) { return zeta_tail(s, 1); }

}  // namespace rgperc
