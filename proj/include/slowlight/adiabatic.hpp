#pragma once
// Analytic adiabatic propagation: the conserved photon flux, the accumulated
// boundary-intensity map v(x) and depth map u(z) = kappa12*tau*z, tabulated
// traveling-wave profiles F_p/F_c of the single argument v - u, field
// reconstruction at any (z, x), the ground-state coherence map, and the
// group velocity.
//
// Two analytic regimes:
//   case1_equal_kappa: kappa12 = kappa32; v accumulates |w_p|^2 + |w_c|^2 and
//     F_p^2 + F_c^2 = 1 (normalized pair of traveling waves).
//   case2_weak_probe: |w_p| << |w_c|; the coupling envelope propagates
//     unchanged, v accumulates |w_c|^2 only, and w_p = |w_c(0,x)| F_p(v-u).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "slowlight/erf.hpp"
#include "slowlight/model.hpp"

namespace slowlight {

inline double photon_flux(complex w_p, complex w_c,
                          const MediumParams& medium) {
  return std::norm(w_p) / medium.kappa12 + std::norm(w_c) / medium.kappa32;
}

// Group velocity in cm per tau. The default form drops the vacuum 1/c term
// (valid when kappa*tau*c*tau >> |w|^2); pass a finite c_tau (cm) for the
// full expression. Both fields zero is the fully stopped limit, 0.
inline double group_velocity(complex w_p, complex w_c,
                             const MediumParams& medium) {
  return (std::norm(w_p) + std::norm(w_c)) / medium.kappa12;
}

inline double group_velocity_full(complex w_p, complex w_c,
                                  const MediumParams& medium, double c_tau) {
  double omega2 = std::norm(w_p) + std::norm(w_c);
  if (omega2 <= 0.0) return 0.0;
  return 1.0 / (1.0 / c_tau + medium.kappa12 / omega2);
}

// Closed-form pieces of v(x) for the built-in gaussian shape:
//   probe           Wp0^2 sqrt(pi/8)  (1 + erf(sqrt(2) x))
//   coupling main   Wc0^2 sqrt(5pi/8) (1 + erf(sqrt(0.4) x))
//   coupling recur  R^2 Wc0^2 sqrt(5pi/8) (1 + erf(sqrt(0.4)(x - x0)))
//   cross           2R Wc0^2 e^{-0.1 x0^2} sqrt(5pi/8)
//                       (1 + erf(sqrt(0.4)(x - x0/2)))
// The cross term (overlap of the two coupling gaussians) is exact, from
// completing the square; it is ~1e-5 relative at x0 = 11.
struct VClosedFormParts {
  double probe = 0, coupling_main = 0, coupling_recur = 0, cross = 0;
};

inline VClosedFormParts v_closed_form_parts(const PulsePair& p, double x) {
  const double pi = 3.14159265358979323846;
  const double sq_pi8 = std::sqrt(pi / 8.0);
  const double sq_5pi8 = std::sqrt(5.0 * pi / 8.0);
  VClosedFormParts t;
  double wp2 = p.omega_p0 * p.omega_p0;
  double wc2 = p.omega_c0 * p.omega_c0;
  t.probe = wp2 * sq_pi8 * (1.0 + slowlight::erf(std::sqrt(2.0) * x));
  t.coupling_main =
      wc2 * sq_5pi8 * (1.0 + slowlight::erf(std::sqrt(0.4) * x));
  t.coupling_recur = p.R * p.R * wc2 * sq_5pi8 *
                     (1.0 + slowlight::erf(std::sqrt(0.4) * (x - p.x0)));
  t.cross = 2.0 * p.R * wc2 * std::exp(-0.1 * p.x0 * p.x0) * sq_5pi8 *
            (1.0 + slowlight::erf(std::sqrt(0.4) * (x - 0.5 * p.x0)));
  return t;
}

inline double v_closed_form(const PulsePair& p, double x,
                            bool include_cross = true,
                            bool coupling_only = false) {
  VClosedFormParts t = v_closed_form_parts(p, x);
  double v = t.coupling_main + t.coupling_recur;
  if (!coupling_only) v += t.probe;
  if (include_cross) v += t.cross;
  return v;
}

// Area of the first pulse pair: integral of the boundary intensities with
// the recurrence excluded (R = 0 limit of v at +infinity).
inline double first_pulse_pair_area(const PulsePair& p) {
  const double pi = 3.14159265358979323846;
  return p.omega_c0 * p.omega_c0 * std::sqrt(5.0 * pi / 2.0) +
         p.omega_p0 * p.omega_p0 * std::sqrt(pi / 2.0);
}

// Depth of the late-time coherence maximum: where u(z) = S/2, i.e. where the
// stored F_p argument revisits the midpoint of the tabulated profile.
inline double max_coherence_depth(const PulsePair& p,
                                  const MediumParams& medium) {
  return first_pulse_pair_area(p) / (2.0 * medium.kappa12);
}

enum class AdiabaticMode { case1_equal_kappa, case2_weak_probe };

// Mode selection: equal couplings take the exact normalized route; otherwise
// the weak-probe route applies if the amplitude ratio is small enough.
inline AdiabaticMode choose_mode(const PulsePair& pair,
                                 const MediumParams& medium) {
  double k = std::max(std::abs(medium.kappa12), std::abs(medium.kappa32));
  if (std::abs(medium.kappa12 - medium.kappa32) <= 1e-12 * k)
    return AdiabaticMode::case1_equal_kappa;
  if (pair.omega_c0 > 0.0 && pair.omega_p0 / pair.omega_c0 <= 0.3)
    return AdiabaticMode::case2_weak_probe;
  throw ConfigError(
      "adiabatic: unequal couplings need omega_p0/omega_c0 <= 0.3");
}

// Cumulative trapezoidal integral of the boundary intensity on the lattice.
// coupling_only selects the weak-probe integrand.
inline std::vector<double> build_v(const PulsePair& pair, const GridSpec& grid,
                                   bool coupling_only = false) {
  std::vector<double> v(grid.n_x, 0.0);
  double dx = grid.dx();
  double prev = 0.0;
  {
    Envelopes e = boundary_envelopes(pair, grid.x_at(0));
    prev = std::norm(e.wc) + (coupling_only ? 0.0 : std::norm(e.wp));
  }
  for (std::size_t j = 1; j < grid.n_x; ++j) {
    Envelopes e = boundary_envelopes(pair, grid.x_at(j));
    double cur = std::norm(e.wc) + (coupling_only ? 0.0 : std::norm(e.wp));
    v[j] = v[j - 1] + 0.5 * dx * (prev + cur);
    prev = cur;
  }
  return v;
}

struct AdiabaticTables {
  AdiabaticMode mode = AdiabaticMode::case1_equal_kappa;
  PulsePair pair;
  double u_slope = 0.0;  // kappa12*tau, so u(z) = u_slope * z
  double S = 0.0;        // first-pulse-pair area
  std::vector<double> x_samples, v_samples;  // lattice map x -> v(x)
  std::vector<double> knot_s, knot_fp;       // profile table F_p(s)
  std::vector<std::string> warnings;

  double v_at(double x) const {
    if (x <= x_samples.front()) return v_samples.front();
    if (x >= x_samples.back()) return v_samples.back();
    auto it = std::lower_bound(x_samples.begin(), x_samples.end(), x);
    std::size_t hi = std::size_t(it - x_samples.begin());
    std::size_t lo = hi - 1;
    double t = (x - x_samples[lo]) / (x_samples[hi] - x_samples[lo]);
    return v_samples[lo] + t * (v_samples[hi] - v_samples[lo]);
  }

  // Probe profile; 0 outside the tabulated argument range (pulse not yet
  // arrived / fully passed).
  double fp_at(double s) const {
    if (knot_s.empty() || s < knot_s.front() || s > knot_s.back()) return 0.0;
    auto it = std::lower_bound(knot_s.begin(), knot_s.end(), s);
    if (it == knot_s.begin()) return knot_fp.front();
    std::size_t hi = std::size_t(it - knot_s.begin());
    std::size_t lo = hi - 1;
    double t = (s - knot_s[lo]) / (knot_s[hi] - knot_s[lo]);
    return knot_fp[lo] + t * (knot_fp[hi] - knot_fp[lo]);
  }

  // Coupling profile via the normalized-pair identity; outside the table all
  // intensity is in the coupling component.
  double fc_at(double s) const {
    double fp = fp_at(s);
    double rest = 1.0 - fp * fp;
    return rest > 0.0 ? std::sqrt(rest) : 0.0;
  }
};

// Build the traveling-wave tables over the first-pulse window. For the
// built-in shape with a recurrence, the window stops 5 units short of the
// recurrence center (both pulses are below 1e-2 of peak there); the profile
// is completely determined by the first pair and reused afterwards.
inline AdiabaticTables tabulate_profiles(const PulsePair& pair,
                                         const MediumParams& medium,
                                         const GridSpec& grid,
                                         AdiabaticMode mode) {
  AdiabaticTables t;
  t.mode = mode;
  t.pair = pair;
  t.u_slope = medium.kappa12;
  t.S = first_pulse_pair_area(pair);

  if (mode == AdiabaticMode::case1_equal_kappa) {
    double k = std::max(std::abs(medium.kappa12), std::abs(medium.kappa32));
    if (std::abs(medium.kappa12 - medium.kappa32) > 1e-12 * k)
      throw ConfigError("adiabatic: equal-coupling mode needs kappa12 = kappa32");
  } else if (pair.omega_c0 <= 0.0 ||
             pair.omega_p0 / pair.omega_c0 > 0.3) {
    t.warnings.push_back(
        "weak-probe mode with omega_p0/omega_c0 > 0.3: neglected "
        "|w_p|^2 correction may exceed 10%");
  }

  bool coupling_only = (mode == AdiabaticMode::case2_weak_probe);
  t.x_samples.resize(grid.n_x);
  for (std::size_t j = 0; j < grid.n_x; ++j) t.x_samples[j] = grid.x_at(j);
  t.v_samples = build_v(pair, grid, coupling_only);

  double window_end = grid.x_max;
  if (pair.shape == PulseShape::gaussian && pair.R > 0.0)
    window_end = std::min(window_end, pair.x0 - 5.0);

  // Collapse plateau regions (integrand below 1e-12 of peak leaves v flat,
  // making the inverse ill-defined; F_p is 0 on the plateau image anyway).
  double v_window_max = 0.0;
  for (std::size_t j = 0; j < grid.n_x && t.x_samples[j] <= window_end; ++j)
    v_window_max = t.v_samples[j];
  double eps_s = 1e-12 * std::max(v_window_max, 1.0);

  for (std::size_t j = 0; j < grid.n_x; ++j) {
    double x = t.x_samples[j];
    if (x > window_end) break;
    Envelopes e = boundary_envelopes(pair, x);
    double denom = coupling_only
                       ? std::abs(e.wc)
                       : std::sqrt(std::norm(e.wp) + std::norm(e.wc));
    double fp = denom > 0.0 ? std::abs(e.wp) *
                                  (e.wp.real() < 0.0 ? -1.0 : 1.0) / denom
                            : 0.0;
    double s = t.v_samples[j];
    if (!t.knot_s.empty() && s - t.knot_s.back() < eps_s) continue;
    t.knot_s.push_back(s);
    t.knot_fp.push_back(fp);
  }
  if (t.knot_s.size() < 2)
    throw ConfigError("adiabatic: profile window holds fewer than 2 knots");
  return t;
}

// Fields at one lattice point from the traveling-wave solution.
inline Envelopes reconstruct_fields(const AdiabaticTables& t,
                                    const MediumParams& medium, double z,
                                    double x) {
  double s = t.v_at(x) - t.u_slope * z;
  Envelopes b = boundary_envelopes(t.pair, x);
  if (t.mode == AdiabaticMode::case1_equal_kappa) {
    double n = std::sqrt(std::norm(b.wp) + std::norm(b.wc));
    return {complex(n * t.fp_at(s), 0.0), complex(n * t.fc_at(s), 0.0)};
  }
  double wc_abs = std::abs(b.wc);
  return {complex(wc_abs * t.fp_at(s), 0.0), b.wc};
}

// Ground-state coherence A3(z, x). The normalized route gives -F_p directly;
// the weak-probe route forms the dark-state ratio from reconstructed fields.
inline complex coherence_map(const AdiabaticTables& t,
                             const MediumParams& medium, double z, double x) {
  double s = t.v_at(x) - t.u_slope * z;
  if (t.mode == AdiabaticMode::case1_equal_kappa)
    return complex(-t.fp_at(s), 0.0);
  Envelopes e = reconstruct_fields(t, medium, z, x);
  double n2 = std::norm(e.wp) + std::norm(e.wc);
  if (n2 <= 0.0) return complex(0.0, 0.0);
  return -std::conj(e.wp) / std::sqrt(n2);
}

// Traveling-wave solution evaluated on a full lattice, with the coherence
// map alongside, in the same layout the numerical solver produces.
struct AdiabaticSolution {
  GridSpec grid;
  FieldGrid fields;
  std::vector<complex> a3;  // row-major (z outer, x inner)
};

inline AdiabaticSolution evaluate_adiabatic(const AdiabaticTables& t,
                                            const MediumParams& medium,
                                            const GridSpec& grid) {
  AdiabaticSolution sol;
  sol.grid = grid;
  sol.fields = FieldGrid(grid.n_z, grid.n_x);
  sol.a3.resize(grid.n_z * grid.n_x);
  for (std::size_t i = 0; i < grid.n_z; ++i) {
    double z = grid.z_at(i, medium.z_m);
    for (std::size_t j = 0; j < grid.n_x; ++j) {
      double x = grid.x_at(j);
      Envelopes e = reconstruct_fields(t, medium, z, x);
      std::size_t o = i * grid.n_x + j;
      sol.fields.w_p[o] = e.wp;
      sol.fields.w_c[o] = e.wc;
      sol.a3[o] = coherence_map(t, medium, z, x);
    }
  }
  return sol;
}

}  // namespace slowlight
