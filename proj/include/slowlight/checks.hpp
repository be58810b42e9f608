#pragma once
// Acceptance-criterion runners shared by the acceptance binary and the CLI
// verify command. Each criterion yields a suite of named sub-checks with
// measured value, expected value, pinned tolerance, and verdict. Expected
// values are golden reference numbers; tolerances are half a unit in the
// last printed digit for value checks, or explicit bounds for inequality
// checks. Tolerances are fixed here, never derived from measurements.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slowlight/adiabatic.hpp"
#include "slowlight/bloch.hpp"
#include "slowlight/config.hpp"
#include "slowlight/diagnostics.hpp"
#include "slowlight/erf.hpp"
#include "slowlight/model.hpp"
#include "slowlight/revival.hpp"
#include "slowlight/solver.hpp"

namespace slowlight::checks {

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;  // target value, or bound for inequality checks
  double tol = 0.0;
  bool is_bound = false;  // true: pass iff measured <= expected
  bool invert = false;    // true (with is_bound): pass iff measured > expected
  bool passed = false;
  std::string note;
};

struct Suite {
  std::string name;
  std::vector<CheckLine> lines;

  bool passed() const {
    for (const CheckLine& l : lines)
      if (!l.passed) return false;
    return true;
  }
  std::size_t n_passed() const {
    std::size_t n = 0;
    for (const CheckLine& l : lines)
      if (l.passed) ++n;
    return n;
  }
};

inline CheckLine value_check(const std::string& name, double measured,
                             double expected, double tol,
                             const std::string& note = "") {
  CheckLine l;
  l.name = name;
  l.measured = measured;
  l.expected = expected;
  l.tol = tol;
  l.passed = std::abs(measured - expected) <= tol;
  l.note = note;
  return l;
}

inline CheckLine bound_check(const std::string& name, double measured,
                             double bound, const std::string& note = "") {
  CheckLine l;
  l.name = name;
  l.measured = measured;
  l.expected = bound;
  l.is_bound = true;
  l.passed = measured <= bound;
  l.note = note;
  return l;
}

inline CheckLine exceeds_check(const std::string& name, double measured,
                               double bound, const std::string& note = "") {
  CheckLine l;
  l.name = name;
  l.measured = measured;
  l.expected = bound;
  l.is_bound = true;
  l.invert = true;
  l.passed = measured > bound;
  l.note = note;
  return l;
}

// --- canonical scenarios -------------------------------------------------
// storage: weak probe stored deep in the cell and regenerated by an R=4
// recurrence (the central worked example and figure pair).
inline PulsePair storage_pair() {
  PulsePair p;
  p.omega_p0 = 5.0;
  p.omega_c0 = 20.0;
  p.R = 4.0;
  p.x0 = 11.0;
  return p;
}
inline MediumParams storage_medium() {
  MediumParams m;
  m.kappa12 = 200.0;
  m.kappa32 = 200.0;
  m.z_m = 8.0;
  return m;
}
inline GridSpec storage_grid() {
  return default_grid(storage_pair(), storage_medium());
}

// matched-exit: equal pulse amplitudes in a denser cell, R tuned so the
// regenerated peak argument lands exactly at the exit.
inline PulsePair matched_pair() {
  PulsePair p;
  p.omega_p0 = 20.0;
  p.omega_c0 = 20.0;
  p.R = 2.923;
  p.x0 = 11.0;
  return p;
}
inline MediumParams matched_medium() {
  MediumParams m;
  m.kappa12 = 700.0;
  m.kappa32 = 700.0;
  m.z_m = 8.0;
  return m;
}

// far-detuned: stronger coupling pulse, detuning swept {0, 120}.
inline PulsePair far_detuned_pair() {
  PulsePair p;
  p.omega_p0 = 10.0;
  p.omega_c0 = 40.0;
  p.R = 4.0;
  p.x0 = 10.0;
  return p;
}
inline MediumParams far_detuned_medium() {
  MediumParams m;
  m.kappa12 = 200.0;
  m.kappa32 = 200.0;
  m.z_m = 8.0;
  return m;
}
// Output lattice 4097 x 201. The recurrence coupling peak of 160 plus
// detuning 120 drives |lambda+| to ~231; the solver's internal floors size
// the march accordingly (x stride 13, z stride 40 for this window).
inline GridSpec far_detuned_grid() {
  GridSpec g;
  g.x_min = -6.0;
  g.x_max = 16.0;
  g.n_x = 4097;
  g.n_z = 201;
  return g;
}

struct CheckContext {
  std::optional<SolveResult> storage_run_;
  std::optional<AdiabaticTables> storage_tables_;

  const SolveResult& storage_run() {
    if (!storage_run_)
      storage_run_ = solve(storage_pair(), storage_medium(), storage_grid());
    return *storage_run_;
  }
  const AdiabaticTables& storage_tables() {
    if (!storage_tables_)
      storage_tables_ =
          tabulate_profiles(storage_pair(), storage_medium(), storage_grid(),
                            AdiabaticMode::case1_equal_kappa);
    return *storage_tables_;
  }
};

inline ExitPeak adiabatic_exit_peak(const AdiabaticTables& t,
                                    const MediumParams& medium,
                                    const GridSpec& grid) {
  FieldGrid row(1, grid.n_x);
  for (std::size_t j = 0; j < grid.n_x; ++j) {
    Envelopes e = reconstruct_fields(t, medium, medium.z_m, grid.x_at(j));
    row.w_p[j] = e.wp;
    row.w_c[j] = e.wc;
  }
  return exit_peak(row, grid);
}

// --- criterion 1: golden revival analytics (closed form, < 1 s) ----------
inline Suite criterion_1(CheckContext&) {
  Suite s{"1 golden revival analytics"};
  PulsePair p = storage_pair();
  MediumParams m = storage_medium();
  RevivalEstimate est = revival_times(p, m);
  double r2 = p.R * p.R;
  s.lines.push_back(value_check("alpha", est.alpha, 2.854598, 0.0000005,
                                "exact evaluation of the defining ratio gives "
                                "2.8545986; the reference digits are a "
                                "truncation of that value"));
  s.lines.push_back(
      value_check("alpha_over_R2", est.alpha / r2, 0.1784124, 0.00000005));
  s.lines.push_back(value_check("beta", est.beta, 2.0559017, 0.00000005));
  s.lines.push_back(
      value_check("beta_over_R2", est.beta / r2, 0.128494, 0.0000005));
  s.lines.push_back(value_check("t_r1", est.t_r1, -2.19, 0.005));
  s.lines.push_back(value_check(
      "t_rm", est.t_rm, -1.767, 0.0005,
      "exact inversion gives -1.766208; the reference value follows from a "
      "3-decimal intermediate in the inversion"));
  s.lines.push_back(value_check("t_r2", est.t_r2, -1.50, 0.005));
  double peak = revival_peak(p, m, est.t_rm);
  s.lines.push_back(value_check(
      "peak_wp", peak, 10.39, 0.005,
      "evaluating the peak formula at the exact argument gives 10.39705; "
      "the reference plugs in the rounded argument -1.767"));
  return s;
}

// --- criterion 2: matched recurrence amplitude ----------------------------
inline Suite criterion_2(CheckContext&) {
  Suite s{"2 matched recurrence amplitude"};
  double r = matched_R(matched_pair(), matched_medium());
  s.lines.push_back(value_check("matched_R", r, 2.923, 0.001));
  return s;
}

// --- criterion 3: dark-state values and coherence-maximum depths ----------
inline Suite criterion_3(CheckContext&) {
  Suite s{"3 dark-state values and coherence depths"};
  DarkState d1 = dark_state(complex(5.0, 0.0), complex(20.0, 0.0));
  s.lines.push_back(
      value_check("a3_peak_5_20", std::abs(d1.a3), 0.242536, 0.0000005));
  DarkState d2 = dark_state(complex(20.0, 0.0), complex(20.0, 0.0));
  s.lines.push_back(value_check("a3_peak_20_20", std::abs(d2.a3),
                                1.0 / std::sqrt(2.0), 1e-12));
  double depth_a = max_coherence_depth(storage_pair(), storage_medium());
  s.lines.push_back(value_check(
      "coherence_depth_k200", depth_a, 2.86, 0.01,
      "S/(2 kappa12) = 2.8808 for these inputs; the 2.86 reference is not "
      "reproducible from its own defining relation, while the companion "
      "1.159 value is reproduced exactly by the same formula"));
  double depth_b = max_coherence_depth(matched_pair(), matched_medium());
  s.lines.push_back(value_check("coherence_depth_k700", depth_b, 1.159, 0.01));
  return s;
}

// --- criterion 4: conservation on the default numeric run -----------------
inline Suite criterion_4(CheckContext& ctx) {
  Suite s{"4 conservation (norm, exact flux relation)"};
  const SolveResult& run = ctx.storage_run();
  s.lines.push_back(bound_check("norm_max_dev", run.norm_max_dev, 1e-7));
  s.lines.push_back(bound_check("flux_relation_residual",
                                run.flux_relation_residual, 1e-6));
  return s;
}

// --- criterion 5: grid self-convergence ------------------------------------
inline Suite criterion_5(CheckContext&) {
  Suite s{"5 grid self-convergence"};
  auto rows = refinement_study(storage_pair(), storage_medium(),
                               storage_grid(), {2});
  s.lines.push_back(bound_check("refine2_delta", rows[0].delta, 1e-5));

  // Control: a lattice the solver is not allowed to rescue. With the
  // stability floors disabled the raw dz = 0.08 sits far outside the field
  // advance's stability region, so the run is garbage and refinement moves
  // it by orders of magnitude (or the stiffness guard rejects it outright).
  GridSpec coarse = storage_grid();
  coarse.n_z = 101;
  SolverOptions raw;
  raw.stability_floors = false;
  raw.store_amplitudes = false;
  double control_delta = std::numeric_limits<double>::infinity();
  std::string note =
      "deliberately coarsened control must fail the bound, validating the "
      "harness";
  try {
    auto crows =
        refinement_study(storage_pair(), storage_medium(), coarse, {2}, raw);
    control_delta = crows[0].delta;
  } catch (const StiffnessError&) {
    note += " (run rejected by the stiffness guard)";
  }
  s.lines.push_back(
      exceeds_check("coarse_control_delta", control_delta, 1e-5, note));
  return s;
}

// --- criterion 6: traveling-wave vs numeric agreement ----------------------
inline Suite criterion_6(CheckContext& ctx) {
  Suite s{"6 traveling-wave vs numeric agreement"};
  const SolveResult& run = ctx.storage_run();
  const AdiabaticTables& tab = ctx.storage_tables();
  MediumParams m = storage_medium();
  GridSpec g = storage_grid();

  ExitPeak pa = adiabatic_exit_peak(tab, m, g);
  s.lines.push_back(bound_check(
      "storage_peak_rel_gap", std::abs(pa.amp - run.peak_abs_wp_exit) /
                                  run.peak_abs_wp_exit,
      0.05, "regenerated-probe peak, closed form vs numeric"));
  s.lines.push_back(value_check("numeric_peak_amp", run.peak_abs_wp_exit,
                                10.44, 0.522, "5% of the reference maximum"));
  s.lines.push_back(value_check("numeric_peak_time", run.peak_time_exit,
                                storage_pair().x0 - 1.74, 0.1));
  double dead = max_abs_wp_in_window(run.fields, g, 2.0,
                                     storage_pair().x0 - 3.0,
                                     run.fields.n_z - 1);
  s.lines.push_back(bound_check("dead_window_wp", dead,
                                1e-3 * storage_pair().omega_p0));

  PulsePair pb = matched_pair();
  MediumParams mb = matched_medium();
  GridSpec gb = default_grid(pb, mb);
  SolverOptions opt;
  opt.store_amplitudes = false;
  SolveResult run_b = solve(pb, mb, gb, opt);
  AdiabaticTables tab_b = tabulate_profiles(pb, mb, gb,
                                            AdiabaticMode::case1_equal_kappa);
  ExitPeak pab = adiabatic_exit_peak(tab_b, mb, gb);
  s.lines.push_back(bound_check(
      "matched_peak_rel_gap",
      std::abs(pab.amp - run_b.peak_abs_wp_exit) / run_b.peak_abs_wp_exit,
      0.05,
      "matched-exit scenario; both routes are converged (closed-form peak "
      "41.3375 matches the profile-table value to 7 digits; numeric 44.6423 "
      "is refine-stable to 6e-6) and an R = 3 variant of the same scenario "
      "gives the same 0.073, so the gap is genuine model separation: the "
      "matched revival exits exactly on the read-pulse maximum where "
      "dark-state following is weakest"));
  return s;
}

// --- criterion 7: detuning independence ------------------------------------
inline Suite criterion_7(CheckContext&) {
  Suite s{"7 detuning independence"};
  SolverOptions opt;
  opt.store_amplitudes = false;
  auto rows = detuning_independence(far_detuned_pair(), far_detuned_medium(),
                                    {0.0, 120.0}, far_detuned_grid(), opt);
  s.lines.push_back(
      value_check("zero_detuning_distance", rows[0].max_diff_rel_peak, 0.0,
                  0.0, "identical run compared with itself"));
  s.lines.push_back(bound_check(
      "detuned_distance_rel_peak", rows[1].max_diff_rel_peak, 0.05,
      "converged value (refine-stable to 8e-7): the bare front of the "
      "delayed coupling pulse drives the stored coherence off resonance, "
      "and with gamma2 = 0 the detuned medium cannot reabsorb that "
      "radiated light, so it accumulates linearly in depth near x = 7.8 "
      "(0.21 of peak per 8 cm); main exit peak and timing still agree to "
      "1.2% and 0.10"));
  return s;
}

// --- criterion 8: oracle equivalences --------------------------------------
inline Suite criterion_8(CheckContext&) {
  Suite s{"8 oracle equivalences"};

  // Constant fields, on resonance: the generator has the closed form
  // A1 = (wc^2 + wp^2 cos(W x))/W^2, A2 = i (wp/W) sin(W x),
  // A3 = wp wc (cos(W x) - 1)/W^2 with W = sqrt(wp^2 + wc^2).
  {
    const double wp = 3.0, wc = 4.0, W = 5.0, T = 2.0;
    const std::size_t n = 4001;
    std::vector<complex> rp(n, complex(wp, 0.0)), rc(n, complex(wc, 0.0));
    MediumParams m;
    m.kappa12 = m.kappa32 = 1.0;
    m.z_m = 1.0;
    AmpRow row = integrate_atoms_row(rp, rc, m, T / double(n - 1));
    complex a1((wc * wc + wp * wp * std::cos(W * T)) / (W * W), 0.0);
    complex a2(0.0, wp / W * std::sin(W * T));
    complex a3(wp * wc * (std::cos(W * T) - 1.0) / (W * W), 0.0);
    double err = std::max({std::abs(row.a1[n - 1] - a1),
                           std::abs(row.a2[n - 1] - a2),
                           std::abs(row.a3[n - 1] - a3)});
    s.lines.push_back(bound_check("constant_field_vs_closed_form", err, 1e-8));
  }

  // First-order excited amplitude against a centered finite difference of
  // the dark-state component, evaluated away from the stationary peak.
  {
    PulsePair p = storage_pair();
    p.R = 0.0;
    const double x = 0.7, h = 1e-5;
    auto a1_of = [&](double xx) {
      Envelopes e = boundary_envelopes(p, xx);
      return std::conj(e.wc) /
             std::sqrt(std::norm(e.wp) + std::norm(e.wc));
    };
    Envelopes e = boundary_envelopes(p, x);
    Envelopes de = boundary_envelope_derivs(p, x);
    complex fd = (a1_of(x + h) - a1_of(x - h)) / (2.0 * h);
    complex oracle = -complex(0.0, 1.0) * fd / e.wp;
    complex got = a2_first_order(e.wp, e.wc, de.wp, de.wc);
    s.lines.push_back(bound_check("a2_first_order_vs_fd",
                                  std::abs(got - oracle) / std::abs(oracle),
                                  1e-6));
  }

  s.lines.push_back(bound_check(
      "erf_inv_roundtrip", std::abs(erf_inv(slowlight::erf(1.2345)) - 1.2345),
      1e-9));
  return s;
}

// --- criterion 9: traveling-wave single-argument property ------------------
// For target arguments s*, locate on every z row the time x* where the
// closed-form accumulated area (the oracle route, not the lattice table)
// satisfies v(x*) - u(z) = s*, then evaluate the reconstructed normalized
// probe there. Rows probe both the storage sweep and the regeneration ramp;
// all must return the same profile value.
inline Suite criterion_9(CheckContext& ctx) {
  Suite s{"9 traveling-wave single-argument property"};
  const AdiabaticTables& tab = ctx.storage_tables();
  MediumParams m = storage_medium();
  GridSpec g = storage_grid();
  const std::size_t n_rows = 41;

  double worst = 0.0;
  const double targets[] = {0.1, 0.25, 0.5, 0.75, 0.9};
  for (double frac : targets) {
    double s_target = frac * tab.S;
    bool have_ref = false;
    double ref = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
      double z = m.z_m * double(i) / double(n_rows - 1);
      double target_v = s_target + tab.u_slope * z;
      double lo = g.x_min, hi = g.x_max;
      if (v_closed_form(tab.pair, hi) <= target_v) continue;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (v_closed_form(tab.pair, mid) < target_v ? lo : hi) = mid;
      }
      double xs = 0.5 * (lo + hi);
      Envelopes b = boundary_envelopes(tab.pair, xs);
      double n = std::sqrt(std::norm(b.wp) + std::norm(b.wc));
      if (n <= 1e-6) continue;
      Envelopes e = reconstruct_fields(tab, m, z, xs);
      double w = std::abs(e.wp) / n;
      if (!have_ref) {
        ref = w;
        have_ref = true;
      } else {
        worst = std::max(worst, std::abs(w - ref));
      }
    }
  }
  s.lines.push_back(bound_check("equal_argument_profile_spread", worst, 1e-4));
  return s;
}

inline Suite run_criterion(int k, CheckContext& ctx) {
  switch (k) {
    case 1: return criterion_1(ctx);
    case 2: return criterion_2(ctx);
    case 3: return criterion_3(ctx);
    case 4: return criterion_4(ctx);
    case 5: return criterion_5(ctx);
    case 6: return criterion_6(ctx);
    case 7: return criterion_7(ctx);
    case 8: return criterion_8(ctx);
    case 9: return criterion_9(ctx);
    default: throw ConfigError("acceptance: criterion index must be 1..9");
  }
}

// Verify-command suites. golden-values groups the closed-form value checks;
// the other suites map one-to-one onto criteria.
inline std::vector<Suite> run_suite(const std::string& suite,
                                    CheckContext& ctx) {
  if (suite == "golden-values")
    return {criterion_1(ctx), criterion_2(ctx), criterion_3(ctx)};
  if (suite == "conservation") return {criterion_4(ctx)};
  if (suite == "convergence") return {criterion_5(ctx)};
  if (suite == "detuning") return {criterion_7(ctx)};
  throw ConfigError(
      "verify: unknown suite '" + suite +
      "' (expected golden-values, conservation, convergence, or detuning)");
}

inline void print_suite(const Suite& s, std::ostream& out) {
  for (const CheckLine& l : s.lines) {
    out << "  [" << (l.passed ? "pass" : "FAIL") << "] " << l.name << ": "
        << l.measured;
    if (l.is_bound)
      out << (l.invert ? " (must exceed " : " (bound ") << l.expected << ")";
    else
      out << " (expected " << l.expected << " +/- " << l.tol << ")";
    if (!l.note.empty()) out << " -- " << l.note;
    out << "\n";
  }
}

}  // namespace slowlight::checks
