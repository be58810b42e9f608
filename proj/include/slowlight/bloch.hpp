#pragma once
// Single-point atomic physics for the lambda system: adiabatic eigenvalues,
// the dark state, the first-order excited-state amplitude, and the
// adiabaticity margin along a pulse pair.
//
// Generator convention (x = t_r/tau):  dA/dx = i H' A with
//   H' = [[0, w_p, 0], [w_p*, delta' , w_c*], [0, w_c, 0]],
//   delta' = delta*tau + i*gamma2*tau/2,
// so the eigenvalue problem factors as lambda * (lambda^2 - delta'*lambda
// - (|w_p|^2+|w_c|^2)) = 0.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "slowlight/model.hpp"

namespace slowlight {

struct DegenerateFieldError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EigenTriple {
  complex lambda0{0.0, 0.0};
  complex lambda_plus{0.0, 0.0};
  complex lambda_minus{0.0, 0.0};
};

inline EigenTriple eigenvalues(complex w_p, complex w_c, double delta,
                               double gamma2) {
  complex half_dp = 0.5 * complex(delta, 0.5 * gamma2);
  double omega2 = std::norm(w_p) + std::norm(w_c);
  complex root = std::sqrt(half_dp * half_dp + omega2);
  complex lp = half_dp + root;
  complex lm = half_dp - root;
  if (lp.real() < lm.real() ||
      (lp.real() == lm.real() && lp.imag() < lm.imag()))
    std::swap(lp, lm);
  return {complex(0.0, 0.0), lp, lm};
}

struct DarkState {
  complex a1, a2, a3;
};

inline DarkState dark_state(complex w_p, complex w_c) {
  double n2 = std::norm(w_p) + std::norm(w_c);
  if (n2 <= 0.0)
    throw DegenerateFieldError("dark_state: both fields zero");
  double n = std::sqrt(n2);
  return {std::conj(w_c) / n, complex(0.0, 0.0), -std::conj(w_p) / n};
}

// First-order excited-state amplitude. Two equivalent forms exist, obtained
// by differentiating either dark-state component; the one whose field
// denominator is larger in magnitude is evaluated:
//   form p:  A2 = -(i/w_p) d/dx (w_c*/N)
//   form c:  A2 = +(i/w_c) d/dx (w_p*/N),   N = sqrt(|w_p|^2+|w_c|^2).
inline complex a2_first_order(complex w_p, complex w_c, complex dw_p_dx,
                              complex dw_c_dx) {
  double n2 = std::norm(w_p) + std::norm(w_c);
  if (n2 <= 0.0)
    throw DegenerateFieldError("a2_first_order: both fields zero");
  double n = std::sqrt(n2);
  double ndot = ((std::conj(w_c) * dw_c_dx).real() +
                 (std::conj(w_p) * dw_p_dx).real()) /
                n;
  const complex i_unit(0.0, 1.0);
  if (std::abs(w_p) >= std::abs(w_c)) {
    complex da1 = std::conj(dw_c_dx) / n - std::conj(w_c) * ndot / n2;
    return -i_unit / w_p * da1;
  }
  complex da3 = std::conj(dw_p_dx) / n - std::conj(w_p) * ndot / n2;
  return i_unit / w_c * da3;
}

// Minimum separation of the bright eigenvalues from lambda0 = 0 over the
// probe support (|w_p| above 1e-3 of its peak) on the given time lattice.
inline double adiabaticity_margin(const PulsePair& pair,
                                  const MediumParams& medium,
                                  const GridSpec& grid) {
  double margin = std::numeric_limits<double>::infinity();
  double floor_wp = 1e-3 * pair.omega_p0;
  for (std::size_t j = 0; j < grid.n_x; ++j) {
    Envelopes e = boundary_envelopes(pair, grid.x_at(j));
    if (std::abs(e.wp) <= floor_wp) continue;
    EigenTriple ev = eigenvalues(e.wp, e.wc, medium.delta, medium.gamma2);
    double sep = std::min(std::abs(ev.lambda_plus), std::abs(ev.lambda_minus));
    margin = std::min(margin, sep);
  }
  return margin;
}

}  // namespace slowlight
