#include "support.hpp"

#include "slowlight/erf.hpp"
#include "slowlight/revival.hpp"

using namespace slowlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("recurrence analytics reproduce the frozen golden values",
          "[revival]") {
  PulsePair p = checks::storage_pair();
  MediumParams m = checks::storage_medium();
  RevivalEstimate est = revival_times(p, m);
  CHECK_THAT(est.alpha, WithinAbs(golden::alpha, 1e-6));
  CHECK_THAT(est.beta, WithinAbs(golden::beta, 1e-6));
  CHECK_THAT(est.alpha / 16.0, WithinAbs(golden::alpha_over_R2, 1e-8));
  CHECK_THAT(est.beta / 16.0, WithinAbs(golden::beta_over_R2, 1e-8));
  CHECK_THAT(est.t_r1, WithinAbs(golden::t_r1, 1e-6));
  CHECK_THAT(est.t_rm, WithinAbs(golden::t_rm, 1e-6));
  CHECK_THAT(est.t_r2, WithinAbs(golden::t_r2, 1e-6));
  CHECK_THAT(revival_peak(p, m, est.t_rm), WithinAbs(golden::peak_wp, 1e-6));
  CHECK_THAT(est.cross_overlap_rel,
             WithinAbs(golden::cross_area_R4 / golden::S_5_20, 1e-8));
  CHECK(est.t_r1 < est.t_rm);
  CHECK(est.t_rm < est.t_r2);
}

TEST_CASE("exit times close the area budget against the closed form",
          "[revival]") {
  PulsePair p = checks::storage_pair();
  MediumParams m = checks::storage_medium();
  RevivalEstimate est = revival_times(p, m);
  double S = first_pulse_pair_area(p);
  double u_exit = m.kappa12 * m.z_m;

  // The inversion neglects the cross overlap; without it the budget closes
  // to rounding.
  struct Pt {
    double t, frac;
  };
  for (Pt pt : {Pt{est.t_r1, 0.0}, Pt{est.t_rm, 0.5}, Pt{est.t_r2, 1.0}}) {
    double v_nc = v_closed_form(p, p.x0 + pt.t, /*include_cross=*/false);
    CHECK_THAT(v_nc - u_exit, WithinAbs(pt.frac * S, 1e-6 * S));
    // with the cross term the residual is exactly the neglected area
    double v_c = v_closed_form(p, p.x0 + pt.t, /*include_cross=*/true);
    double resid = std::abs(v_c - u_exit - pt.frac * S);
    CHECK(resid > 1e-6 * S);
    CHECK(resid < 6e-5 * S);
  }
}

TEST_CASE("matched recurrence ratio and its exit-centering property",
          "[revival]") {
  CHECK_THAT(matched_R(checks::matched_pair(), checks::matched_medium()),
             WithinAbs(golden::matched_R_700, 1e-6));
  CHECK_THAT(matched_R(checks::storage_pair(), checks::storage_medium()),
             WithinAbs(golden::matched_R_200, 1e-6));

  PulsePair p = checks::storage_pair();
  p.R = matched_R(p, checks::storage_medium());
  RevivalEstimate est = revival_times(p, checks::storage_medium());
  CHECK_THAT(est.t_rm, WithinAbs(0.0, 1e-12));
}

TEST_CASE("width estimate: frozen values and the area identity", "[revival]") {
  PulsePair p = checks::storage_pair();
  CHECK_THAT(fwhm_estimate(p, golden::matched_R_200),
             WithinAbs(golden::fwhm_matched_200, 1e-6));

  PulsePair coupling_only = p;
  coupling_only.omega_p0 = 0.0;
  CHECK_THAT(fwhm_estimate(coupling_only, 1.0),
             WithinAbs(golden::fwhm_R1_coupling_only, 1e-6));

  // identity: width equals pair area over (R^2 coupling intensity)
  for (double r : {0.7, 1.0, 2.5, 4.0}) {
    CHECK_THAT(fwhm_estimate(p, r),
               WithinRel(first_pulse_pair_area(p) /
                             (r * r * p.omega_c0 * p.omega_c0),
                         1e-12));
  }
  CHECK_THROWS_AS(fwhm_estimate(p, 0.0), std::domain_error);
}

TEST_CASE("escape condition and its minimum trapping ratio", "[revival]") {
  PulsePair p = checks::storage_pair();
  p.R = 1.0;  // below the r_min bound for this cell
  try {
    revival_times(p, checks::storage_medium());
    FAIL("expected EscapeError");
  } catch (const EscapeError& e) {
    REQUIRE(std::isfinite(e.r_min));
    CHECK_THAT(e.r_min, WithinAbs(golden::r_min_escape, 1e-6));
  }
  // exactly at r_min the pulse still escapes (bound is strict)
  p.R = golden::r_min_escape * 0.9999;
  CHECK_THROWS_AS(revival_times(p, checks::storage_medium()), EscapeError);
  p.R = golden::r_min_escape * 1.01;
  CHECK_NOTHROW(revival_times(p, checks::storage_medium()));

  // cell too short: the first pair alone already sweeps the profile out,
  // no recurrence can trap it
  MediumParams shallow = checks::storage_medium();
  shallow.z_m = 0.1;
  PulsePair p4 = checks::storage_pair();
  try {
    revival_times(p4, shallow);
    FAIL("expected EscapeError");
  } catch (const EscapeError& e) {
    CHECK_FALSE(std::isfinite(e.r_min));
  }
}

TEST_CASE("matched ratio does not exist for a too-dilute cell", "[revival]") {
  MediumParams dilute = checks::storage_medium();
  dilute.kappa12 = dilute.kappa32 = 50.0;  // kappa z_m = 400 < S/2
  CHECK_THROWS_AS(matched_R(checks::storage_pair(), dilute), NoMatchedRError);
}

TEST_CASE("analytics reject a missing coupling pulse", "[revival]") {
  PulsePair p = checks::storage_pair();
  p.omega_c0 = 0.0;
  CHECK_THROWS_AS(revival_times(p, checks::storage_medium()), ConfigError);
}

TEST_CASE("composed estimate carries all fields", "[revival]") {
  RevivalEstimate est =
      revival_estimate(checks::storage_pair(), checks::storage_medium());
  CHECK(est.peak_wp > 0.0);
  CHECK(est.fwhm > 0.0);
  CHECK_THAT(est.peak_wp, WithinAbs(golden::peak_wp, 1e-6));
  CHECK_THAT(est.fwhm,
             WithinRel(golden::S_5_20 / (16.0 * 400.0), 1e-4));
}
