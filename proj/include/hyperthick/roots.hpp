#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hyperthick/error.hpp"

namespace hyperthick::roots {

/// Newton iteration safeguarded by a sign bracket. `f_df(x)` returns
/// {f(x), f'(x)}; f(lo) and f(hi) must differ in sign (zero allowed).
/// Falls back to bisection whenever a Newton step leaves the bracket.
/// Stops when |f| <= residual_tol or the bracket collapses to rounding.
template <class FDf>
double newton_bisect(FDf&& f_df, double lo, double hi, double start, double residual_tol = 1e-15,
                     int max_iter = 400) {
  auto [f_lo, d_lo] = f_df(lo);
  auto [f_hi, d_hi] = f_df(hi);
  (void)d_lo;
  (void)d_hi;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) throw NoRootError("newton_bisect: root not bracketed");
  const bool rising = f_hi > 0.0;
  if (hi < lo) std::swap(lo, hi);
  double x = (start > lo && start < hi) ? start : 0.5 * (lo + hi);
  for (int iter = 0; iter < max_iter; ++iter) {
    auto [f, df] = f_df(x);
    if (std::abs(f) <= residual_tol) return x;
    // Shrink the bracket: [lo, hi] keeps f(lo) and f(hi) of opposite sign.
    if ((f > 0.0) == rising) {
      hi = x;
    } else {
      lo = x;
    }
    double next = (df != 0.0) ? x - f / df : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) ||
        next == x) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace hyperthick::roots
