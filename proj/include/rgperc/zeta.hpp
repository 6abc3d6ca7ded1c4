#pragma once

#include <cstdint>

namespace rgperc {

/// Riemann zeta function for real s > 1, absolute error below 1e-12.
/// Throws DivergentMoment for s <= 1.
double riemann_zeta(double s);

/// Tail sum  sum_{k >= from} k^{-s}  for s > 1 and from >= 1.
double zeta_tail(double s, std::uint32_t from);

}  // namespace rgperc
