#pragma once
// Closed-form predictions for the regenerated probe pulse. Everything rests
// on the condensed exit condition
//   erf(sqrt(2/5) t) = (alpha - f beta)/R^2 - 1,   t = (t_r - t_d)/tau,
// with f = 1 (exit starts), 1/2 (peak argument), 0 (exit ends), where
//   alpha = 2 kappa12 tau z_m / (|Wc0|^2 sqrt(5 pi/2)),
//   beta  = 2 S / (|Wc0|^2 sqrt(5 pi/2)),  S = first_pulse_pair_area.
// The timing neglects the small overlap term between the two coupling
// gaussians; its relative size is surfaced as a diagnostic, not applied.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "slowlight/adiabatic.hpp"
#include "slowlight/erf.hpp"
#include "slowlight/model.hpp"

namespace slowlight {

struct RevivalEstimate {
  double t_r1 = 0.0;  // exit start, (t_r - t_d)/tau
  double t_rm = 0.0;  // peak argument
  double t_r2 = 0.0;  // exit end
  double peak_wp = 0.0;
  double fwhm = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double cross_overlap_rel = 0.0;  // neglected coupling-overlap area / S
};

// Escape condition violated: the recurrence is too weak to push the stored
// profile out of the cell. r_min is the smallest workable R, or +inf when
// the first pulse already traverses the medium (no R can help).
struct EscapeError : std::runtime_error {
  double r_min;
  EscapeError(const std::string& msg, double r) : std::runtime_error(msg), r_min(r) {}
};

struct NoMatchedRError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double condensed_alpha(const PulsePair& pair,
                              const MediumParams& medium) {
  const double pi = 3.14159265358979323846;
  return 2.0 * medium.kappa12 * medium.z_m /
         (pair.omega_c0 * pair.omega_c0 * std::sqrt(5.0 * pi / 2.0));
}

inline double condensed_beta(const PulsePair& pair) {
  const double pi = 3.14159265358979323846;
  return 2.0 * first_pulse_pair_area(pair) /
         (pair.omega_c0 * pair.omega_c0 * std::sqrt(5.0 * pi / 2.0));
}

inline RevivalEstimate revival_times(const PulsePair& pair,
                                     const MediumParams& medium) {
  if (pair.omega_c0 <= 0.0)
    throw ConfigError("revival: omega_c0 must be positive");
  RevivalEstimate est;
  est.alpha = condensed_alpha(pair, medium);
  est.beta = condensed_beta(pair);

  if (est.alpha <= est.beta)
    throw EscapeError(
        "revival: medium too short to store the pulse (the first pair "
        "traverses it; kappa12*z_m must exceed the pulse-pair area)",
        std::numeric_limits<double>::infinity());
  double r2 = pair.R * pair.R;
  if (r2 <= 0.0 || est.alpha / r2 - 1.0 >= 1.0) {
    double r_min = std::sqrt(est.alpha / 2.0);
    throw EscapeError(
        "revival: R too small for the regenerated pulse to escape "
        "(need R > " + std::to_string(r_min) + ")",
        r_min);
  }

  const double root_04 = std::sqrt(0.4);  // sqrt(2/5)
  auto exit_time = [&](double f) {
    return erf_inv((est.alpha - f * est.beta) / r2 - 1.0) / root_04;
  };
  est.t_r1 = exit_time(1.0);
  est.t_rm = exit_time(0.5);
  est.t_r2 = exit_time(0.0);

  double cross_total = 4.0 * pair.R * pair.omega_c0 * pair.omega_c0 *
                       std::exp(-0.1 * pair.x0 * pair.x0) *
                       std::sqrt(5.0 * 3.14159265358979323846 / 8.0);
  est.cross_overlap_rel = cross_total / first_pulse_pair_area(pair);
  return est;
}

// Peak regenerated probe amplitude at the exit-time argument t_rm.
inline double revival_peak(const PulsePair& pair, const MediumParams& medium,
                           double t_rm) {
  double n = std::sqrt(pair.omega_c0 * pair.omega_c0 +
                       pair.omega_p0 * pair.omega_p0);
  if (n <= 0.0) return 0.0;
  return pair.R * pair.omega_c0 * std::exp(-0.2 * t_rm * t_rm) *
         pair.omega_p0 / n;
}

// R that lands the midpoint of the stored profile exactly at the cell exit:
//   |Wp0|^2 sqrt(pi/8) + |Wc0|^2 sqrt(5 pi/8) (1 + R^2) = kappa12 z_m.
inline double matched_R(const PulsePair& pair, const MediumParams& medium) {
  const double pi = 3.14159265358979323846;
  double c_half = pair.omega_c0 * pair.omega_c0 * std::sqrt(5.0 * pi / 8.0);
  double p_half = pair.omega_p0 * pair.omega_p0 * std::sqrt(pi / 8.0);
  double r2 = (medium.kappa12 * medium.z_m - c_half - p_half) / c_half;
  if (!(r2 > 0.0))
    throw NoMatchedRError(
        "matched_R: medium too thin, the first pulse pair would traverse it");
  return std::sqrt(r2);
}

// Width of the regenerated pulse under linearized v near the recurrence peak,
// in units of the original probe length. Equals S/(R^2 |Wc0|^2).
inline double fwhm_estimate(const PulsePair& pair, double R) {
  if (R <= 0.0) throw std::domain_error("fwhm_estimate: R must be positive");
  const double pi = 3.14159265358979323846;
  double ratio = pair.omega_p0 / pair.omega_c0;
  return std::sqrt(5.0 * pi / 2.0) / (R * R) *
         (1.0 + ratio * ratio / std::sqrt(5.0));
}

inline RevivalEstimate revival_estimate(const PulsePair& pair,
                                        const MediumParams& medium) {
  RevivalEstimate est = revival_times(pair, medium);
  est.peak_wp = revival_peak(pair, medium, est.t_rm);
  est.fwhm = fwhm_estimate(pair, pair.R);
  return est;
}

}  // namespace slowlight
