#pragma once
// Data model for two-color pulse propagation in a three-level lambda medium.
// Everything is dimensionless: retarded time x = t_r/tau, fields are
// half-Rabi frequencies times tau (stored complex), depth z in cm,
// coupling constants kappa*tau in 1/cm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slowlight {

using complex = std::complex<double>;

enum class PulseShape { gaussian, custom };

// Boundary envelopes at z = 0. The built-in gaussian shape is
//   w_p(x) = omega_p0 * exp(-x^2)
//   w_c(x) = omega_c0 * (exp(-0.2 x^2) + R * exp(-0.2 (x - x0)^2))
// so the coupling pulse is sqrt(5) times longer than the probe and a delayed
// copy scaled by R re-enters at x0. A custom shape is a piecewise-linear
// table, zero outside its sample range.
struct PulsePair {
  double omega_p0 = 0.0;  // peak probe half-Rabi frequency * tau
  double omega_c0 = 0.0;  // peak coupling half-Rabi frequency * tau
  double R = 0.0;         // recurrence amplitude ratio
  double x0 = 0.0;        // recurrence delay t_d/tau
  PulseShape shape = PulseShape::gaussian;
  std::vector<double> xs;          // custom shape sample positions (ascending)
  std::vector<double> wp_samples;  // custom probe envelope values
  std::vector<double> wc_samples;  // custom coupling envelope values
};

struct MediumParams {
  double kappa12 = 0.0;  // kappa12*tau, 1/cm (probe transition)
  double kappa32 = 0.0;  // kappa32*tau, 1/cm (coupling transition)
  double gamma2 = 0.0;   // excited-state decay gamma2*tau
  double delta = 0.0;    // one-photon detuning delta*tau
  double z_m = 0.0;      // cell length, cm
};

struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  std::size_t n_x = 2;  // time samples over [x_min, x_max], inclusive
  std::size_t n_z = 2;  // depth samples over [0, z_m], inclusive

  double dx() const { return (x_max - x_min) / double(n_x - 1); }
  double x_at(std::size_t j) const { return x_min + dx() * double(j); }
  double dz(double z_m) const { return z_m / double(n_z - 1); }
  double z_at(std::size_t i, double z_m) const { return dz(z_m) * double(i); }
};

struct FieldGrid {
  std::size_t n_z = 0, n_x = 0;
  std::vector<complex> w_p, w_c;  // row-major (z outer, x inner)

  FieldGrid() = default;
  FieldGrid(std::size_t nz, std::size_t nx)
      : n_z(nz), n_x(nx), w_p(nz * nx), w_c(nz * nx) {}
  std::size_t idx(std::size_t i, std::size_t j) const { return i * n_x + j; }
};

struct AmplitudeGrid {
  std::size_t n_z = 0, n_x = 0;
  std::vector<complex> a1, a2, a3;  // same layout as FieldGrid

  AmplitudeGrid() = default;
  AmplitudeGrid(std::size_t nz, std::size_t nx)
      : n_z(nz), n_x(nx), a1(nz * nx), a2(nz * nx), a3(nz * nx) {}
  std::size_t idx(std::size_t i, std::size_t j) const { return i * n_x + j; }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Envelopes {
  complex wp, wc;
};

namespace detail {

inline double interp_table(const std::vector<double>& xs,
                           const std::vector<double>& ys, double x) {
  if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  std::size_t hi = std::size_t(it - xs.begin());
  std::size_t lo = hi - 1;
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

inline double interp_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys, double x) {
  if (xs.size() < 2 || x <= xs.front() || x >= xs.back()) return 0.0;
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t hi = (it == xs.begin()) ? 1 : std::size_t(it - xs.begin());
  std::size_t lo = hi - 1;
  return (ys[hi] - ys[lo]) / (xs[hi] - xs[lo]);
}

}  // namespace detail

inline Envelopes boundary_envelopes(const PulsePair& p, double x) {
  if (p.shape == PulseShape::gaussian) {
    double wp = p.omega_p0 * std::exp(-x * x);
    double d = x - p.x0;
    double wc = p.omega_c0 *
                (std::exp(-0.2 * x * x) + p.R * std::exp(-0.2 * d * d));
    return {complex(wp, 0.0), complex(wc, 0.0)};
  }
  return {complex(detail::interp_table(p.xs, p.wp_samples, x), 0.0),
          complex(detail::interp_table(p.xs, p.wc_samples, x), 0.0)};
}

// Envelope time derivatives; closed form for the gaussian shape, piecewise
// slopes for custom tables.
inline Envelopes boundary_envelope_derivs(const PulsePair& p, double x) {
  if (p.shape == PulseShape::gaussian) {
    double dwp = p.omega_p0 * (-2.0 * x) * std::exp(-x * x);
    double d = x - p.x0;
    double dwc = p.omega_c0 * (-0.4 * x * std::exp(-0.2 * x * x) -
                               0.4 * d * p.R * std::exp(-0.2 * d * d));
    return {complex(dwp, 0.0), complex(dwc, 0.0)};
  }
  return {complex(detail::interp_slope(p.xs, p.wp_samples, x), 0.0),
          complex(detail::interp_slope(p.xs, p.wc_samples, x), 0.0)};
}

struct ValidationCheck {
  std::string name;
  double ratio = 0.0;      // measured value of the governing ratio
  double threshold = 0.0;  // pass requires ratio >= threshold
  bool applicable = true;
  bool passed = true;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

namespace detail {

// Pulse support extent used for window-coverage checks: gaussian envelopes
// decay below 1e-6 of peak outside [-6, 6] (coupling exponent 0.2 governs).
inline void pulse_support(const PulsePair& p, double& lo, double& hi) {
  if (p.shape == PulseShape::gaussian) {
    lo = -5.0;
    hi = (p.R > 0.0) ? p.x0 + 5.0 : 5.0;
    return;
  }
  lo = p.xs.empty() ? 0.0 : p.xs.front();
  hi = p.xs.empty() ? 0.0 : p.xs.back();
}

// Intensity-weighted RMS durations; the built-in shape gives sqrt(5) exactly.
inline double pulse_length_ratio(const PulsePair& p) {
  if (p.shape == PulseShape::gaussian) return std::sqrt(5.0);
  if (p.xs.size() < 2) return 0.0;
  double m0p = 0, m2p = 0, m0c = 0, m2c = 0;
  for (std::size_t k = 0; k + 1 < p.xs.size(); ++k) {
    double xm = 0.5 * (p.xs[k] + p.xs[k + 1]);
    double dx = p.xs[k + 1] - p.xs[k];
    double ip = 0.5 * (p.wp_samples[k] * p.wp_samples[k] +
                       p.wp_samples[k + 1] * p.wp_samples[k + 1]);
    double ic = 0.5 * (p.wc_samples[k] * p.wc_samples[k] +
                       p.wc_samples[k + 1] * p.wc_samples[k + 1]);
    m0p += ip * dx;
    m2p += ip * xm * xm * dx;
    m0c += ic * dx;
    m2c += ic * xm * xm * dx;
  }
  if (m0p <= 0 || m0c <= 0) return 0.0;
  return std::sqrt((m2c / m0c) / (m2p / m0p));
}

}  // namespace detail

// Structural problems (malformed grid, non-positive medium constants,
// negative amplitudes) throw ConfigError. Physics-regime conditions are
// reported as pass/fail checks with the measured ratio.
inline ValidationReport validate_config(const PulsePair& pair,
                                        const MediumParams& medium,
                                        const GridSpec& grid) {
  if (grid.n_x < 2 || grid.n_z < 2)
    throw ConfigError("grid: n_x and n_z must each be at least 2");
  if (!(grid.x_min < grid.x_max))
    throw ConfigError("grid: x_min must be below x_max");
  if (!(medium.z_m > 0.0)) throw ConfigError("medium: z_m must be positive");
  if (medium.gamma2 < 0.0)
    throw ConfigError("medium: gamma2 must be non-negative");
  if (pair.omega_p0 < 0.0 || pair.omega_c0 < 0.0 || pair.R < 0.0)
    throw ConfigError("pulse: amplitudes and R must be non-negative");
  if (pair.shape == PulseShape::custom &&
      (pair.xs.size() != pair.wp_samples.size() ||
       pair.xs.size() != pair.wc_samples.size() || pair.xs.size() < 2))
    throw ConfigError("pulse: custom shape needs matching sample arrays");

  ValidationReport rep;

  ValidationCheck strong{"strong_coupling", pair.omega_c0, 10.0, true,
                         pair.omega_c0 >= 10.0};
  rep.checks.push_back(strong);

  double lr = detail::pulse_length_ratio(pair);
  rep.checks.push_back({"coupling_longer_than_probe", lr, 1.0, true, lr > 1.0});

  bool fd_applicable = medium.delta > pair.omega_c0 && medium.delta > 0.0;
  double fd_ratio = fd_applicable
                        ? pair.omega_c0 * pair.omega_c0 / medium.delta
                        : 0.0;
  rep.checks.push_back({"far_detuned_strength", fd_ratio, 10.0, fd_applicable,
                        !fd_applicable || fd_ratio >= 10.0});

  double lo, hi;
  detail::pulse_support(pair, lo, hi);
  double margin = std::min(lo - grid.x_min, grid.x_max - hi);
  rep.checks.push_back(
      {"window_covers_support", margin, 0.0, true, margin >= 0.0});

  double kmin = std::min(medium.kappa12, medium.kappa32);
  rep.checks.push_back(
      {"positive_couplings", kmin, 0.0, true, kmin > 0.0});

  return rep;
}

}  // namespace slowlight
