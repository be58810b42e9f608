#pragma once
// Error function and its inverse. The forward direction delegates to the
// standard library; the inverse runs safeguarded Newton on the forward
// function (bisection fallback keeps the iterate inside a shrinking bracket).

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slowlight {

inline double erf(double x) { return std::erf(x); }

// Inverse of erf on (-1, 1); throws std::domain_error outside.
// Solves for |y| and mirrors the sign, so erf_inv(-y) == -erf_inv(y) exactly.
inline double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0))
    throw std::domain_error("erf_inv: argument must lie in (-1, 1)");
  if (y == 0.0) return 0.0;
  double ay = std::abs(y);

  // Winitzki-style seed, good to ~1e-2 everywhere in the open interval.
  const double a = 0.147;
  double l = std::log1p(-ay * ay);
  double t = 2.0 / (3.14159265358979323846 * a) + 0.5 * l;
  double x = std::sqrt(std::sqrt(t * t - l / a) - t);

  // Bracket the root; erf is increasing, so expand until the sign flips.
  double lo = 0.0;
  double hi = x + 1.0;
  while (std::erf(hi) < ay) hi += 1.0;

  // Safeguarded Newton, run to the floating-point fixed point (the bracket
  // bisection fallback guarantees progress, so 80 iterations is ample).
  const double two_over_sqrt_pi = 1.1283791670955125739;
  for (int it = 0; it < 80; ++it) {
    double f = std::erf(x) - ay;
    if (f > 0.0) hi = x; else lo = x;
    double df = two_over_sqrt_pi * std::exp(-x * x);
    double xn = x - f / df;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (xn == x) break;
    x = xn;
  }
  return std::copysign(x, y);
}

}  // namespace slowlight
