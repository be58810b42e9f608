#include "support.hpp"

using namespace slowlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lattice accessors hit both endpoints exactly", "[model]") {
  GridSpec g;
  g.x_min = -6.0;
  g.x_max = 17.0;
  g.n_x = 4096;
  g.n_z = 801;
  CHECK(g.x_at(0) == -6.0);
  CHECK_THAT(g.x_at(g.n_x - 1), WithinAbs(17.0, 1e-12));
  CHECK_THAT(g.dx(), WithinRel(23.0 / 4095.0, 1e-15));
  CHECK(g.z_at(0, 8.0) == 0.0);
  CHECK_THAT(g.z_at(g.n_z - 1, 8.0), WithinAbs(8.0, 1e-12));
  CHECK_THAT(g.dz(8.0), WithinRel(0.01, 1e-12));
}

TEST_CASE("built-in boundary envelopes and derivatives", "[model]") {
  PulsePair p = checks::storage_pair();

  Envelopes at0 = boundary_envelopes(p, 0.0);
  CHECK_THAT(at0.wp.real(), WithinAbs(5.0, 1e-12));
  CHECK_THAT(at0.wc.real(),
             WithinAbs(20.0 * (1.0 + 4.0 * std::exp(-0.2 * 121.0)), 1e-12));

  Envelopes atx0 = boundary_envelopes(p, p.x0);
  CHECK_THAT(atx0.wc.real(),
             WithinAbs(20.0 * (std::exp(-0.2 * 121.0) + 4.0), 1e-12));
  CHECK_THAT(atx0.wp.real(), WithinAbs(5.0 * std::exp(-121.0), 1e-300));

  // closed-form derivatives against a central difference
  const double h = 1e-6;
  for (double x : {-1.3, 0.4, 2.0, 9.5, 11.0}) {
    Envelopes d = boundary_envelope_derivs(p, x);
    Envelopes fp = boundary_envelopes(p, x + h);
    Envelopes fm = boundary_envelopes(p, x - h);
    complex fd_wp = (fp.wp - fm.wp) / (2.0 * h);
    complex fd_wc = (fp.wc - fm.wc) / (2.0 * h);
    CHECK_THAT(std::abs(d.wp - fd_wp), WithinAbs(0.0, 1e-6));
    CHECK_THAT(std::abs(d.wc - fd_wc), WithinAbs(0.0, 1e-6));
  }
}

TEST_CASE("custom tabulated envelopes interpolate their samples", "[model]") {
  PulsePair g = small_pair();
  PulsePair p;
  p.shape = PulseShape::custom;
  const std::size_t n = 2001;
  for (std::size_t k = 0; k < n; ++k) {
    double x = -6.0 + 12.0 * double(k) / double(n - 1);
    Envelopes e = boundary_envelopes(g, x);
    p.xs.push_back(x);
    p.wp_samples.push_back(e.wp.real());
    p.wc_samples.push_back(e.wc.real());
  }

  // at the knots up to one rounding of the chord formula
  Envelopes at = boundary_envelopes(p, p.xs[700]);
  CHECK_THAT(at.wp.real(), WithinAbs(p.wp_samples[700], 1e-13));
  // between knots: within the h^2/8 chord bound of the smooth shape
  double h = 12.0 / double(n - 1);
  for (double x : {-2.0003, 0.0021, 1.5004}) {
    Envelopes e = boundary_envelopes(p, x);
    Envelopes ref = boundary_envelopes(g, x);
    CHECK_THAT(std::abs(e.wp - ref.wp), WithinAbs(0.0, h * h * 20.0));
    CHECK_THAT(std::abs(e.wc - ref.wc), WithinAbs(0.0, h * h * 20.0));
  }
  // zero outside the table
  CHECK(std::abs(boundary_envelopes(p, 7.0).wp) == 0.0);
  CHECK(std::abs(boundary_envelopes(p, -7.0).wc) == 0.0);
}

TEST_CASE("coupling-to-probe length ratio of the built-in shape", "[model]") {
  CHECK_THAT(detail::pulse_length_ratio(checks::storage_pair()),
             WithinRel(std::sqrt(5.0), 1e-12));
}

TEST_CASE("structural validation throws on malformed configs", "[model]") {
  PulsePair p = checks::storage_pair();
  MediumParams m = checks::storage_medium();
  GridSpec g = checks::storage_grid();

  GridSpec bad = g;
  bad.n_x = 1;
  CHECK_THROWS_AS(validate_config(p, m, bad), ConfigError);
  bad = g;
  bad.x_min = bad.x_max;
  CHECK_THROWS_AS(validate_config(p, m, bad), ConfigError);
  MediumParams mm = m;
  mm.z_m = 0.0;
  CHECK_THROWS_AS(validate_config(p, mm, g), ConfigError);
  mm = m;
  mm.gamma2 = -0.1;
  CHECK_THROWS_AS(validate_config(p, mm, g), ConfigError);
  PulsePair pp = p;
  pp.omega_c0 = -1.0;
  CHECK_THROWS_AS(validate_config(pp, m, g), ConfigError);
  pp = p;
  pp.shape = PulseShape::custom;
  pp.xs = {0.0, 1.0};
  pp.wp_samples = {1.0};
  pp.wc_samples = {1.0, 1.0};
  CHECK_THROWS_AS(validate_config(pp, m, g), ConfigError);
}

TEST_CASE("soft validation checks flag regime violations", "[model]") {
  PulsePair p = checks::storage_pair();
  MediumParams m = checks::storage_medium();
  GridSpec g = checks::storage_grid();

  ValidationReport ok = validate_config(p, m, g);
  CHECK(ok.all_passed());

  PulsePair weak = p;
  weak.omega_c0 = 5.0;
  ValidationReport r1 = validate_config(weak, m, g);
  bool found = false;
  for (const auto& c : r1.checks)
    if (c.name == "strong_coupling") {
      found = true;
      CHECK_FALSE(c.passed);
    }
  CHECK(found);

  GridSpec narrow = g;
  narrow.x_max = 3.0;  // support extends to x0 + 5
  ValidationReport r2 = validate_config(p, m, narrow);
  for (const auto& c : r2.checks)
    if (c.name == "window_covers_support") CHECK_FALSE(c.passed);

  MediumParams det = m;
  det.delta = 120.0;  // above omega_c0 = 20, ratio 400/120 < 10
  ValidationReport r3 = validate_config(p, det, g);
  for (const auto& c : r3.checks)
    if (c.name == "far_detuned_strength") {
      CHECK(c.applicable);
      CHECK_FALSE(c.passed);
    }

  MediumParams nodetune = m;  // delta = 0: check not applicable
  ValidationReport r4 = validate_config(p, nodetune, g);
  for (const auto& c : r4.checks)
    if (c.name == "far_detuned_strength") CHECK_FALSE(c.applicable);

  MediumParams zerok = m;
  zerok.kappa12 = zerok.kappa32 = 0.0;
  ValidationReport r5 = validate_config(p, zerok, g);
  for (const auto& c : r5.checks)
    if (c.name == "positive_couplings") CHECK_FALSE(c.passed);
}

TEST_CASE("scenario JSON parsing, defaults, and round trip", "[model]") {
  nlohmann::json j = {{"omega_p0", 5.0}, {"omega_c0", 20.0},
                      {"kappa12", 200.0}, {"z_m", 8.0},
                      {"R", 4.0},         {"x0", 11.0}};
  Scenario s = scenario_from_json(j);
  CHECK(s.medium.kappa32 == 200.0);  // defaults to kappa12
  CHECK(s.medium.gamma2 == 0.0);
  CHECK(s.medium.delta == 0.0);
  CHECK(s.grid.n_x == 4096);
  CHECK(s.grid.n_z == 801);
  CHECK(s.grid.x_max == 17.0);  // window follows the recurrence center

  nlohmann::json back = scenario_to_json(s);
  Scenario s2 = scenario_from_json(back);
  CHECK(s2.pair.R == s.pair.R);
  CHECK(s2.grid.n_x == s.grid.n_x);
  CHECK(s2.medium.kappa32 == s.medium.kappa32);

  nlohmann::json missing = {{"omega_p0", 5.0}};
  CHECK_THROWS_AS(scenario_from_json(missing), ConfigError);

  nlohmann::json frac = j;
  frac["n_x"] = 100.5;
  CHECK_THROWS_AS(scenario_from_json(frac), ConfigError);

  nlohmann::json single = j;
  single["R"] = 0.0;
  Scenario s3 = scenario_from_json(single);
  CHECK(s3.grid.x_max == 6.0);  // no recurrence: symmetric window
}
