#pragma once

#include <qentropy/error.hpp>

#include <cmath>
#include <vector>

namespace qentropy {

struct Bracket {
  double lower;
  double upper;
};

/// Bisection on a bracket with a sign change; stops once the interval is
/// narrower than `tolerance` (or cannot shrink further) and returns its midpoint.
template <typename Function>
double bisect(Function&& f, Bracket bracket, double tolerance) {
  double lo = bracket.lower;
  double hi = bracket.upper;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorCode::NoRootFound, "bracket does not change sign");
  }
  while (hi - lo >= tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Samples f at lower + k * step strictly inside (lower, upper) and returns a
/// bracket between every pair of consecutive nonzero samples of opposite sign.
/// Zero samples in between are absorbed into that bracket; a zero that does
/// not separate a sign change is not a crossing.
template <typename Function>
std::vector<Bracket> bracket_sign_changes(Function&& f, double lower, double upper, double step) {
  if (!(step > 0.0) || !(upper > lower)) {
    throw Error(ErrorCode::InvalidArgument, "bracketing needs step > 0 and upper > lower");
  }
  std::vector<Bracket> out;
  const auto n = static_cast<long>(std::ceil((upper - lower) / step - 1e-9));
  bool have_prev = false;
  double x_prev = 0.0;
  double f_prev = 0.0;
  for (long k = 1; k < n; ++k) {
    const double x = lower + static_cast<double>(k) * step;
    const double fx = f(x);
    if (fx == 0.0) continue;
    if (have_prev && std::signbit(fx) != std::signbit(f_prev)) out.push_back({x_prev, x});
    x_prev = x;
    f_prev = fx;
    have_prev = true;
  }
  return out;
}

}  // namespace qentropy
