#pragma once
// Shared scenarios and cached expensive runs for the unit tests. The golden
// constants below were frozen from an independent high-precision evaluation
// of the closed forms before the library was implemented; tests compare
// against them, never against values computed by the code under test.

#include <catch2/catch_amalgamated.hpp>

#include "slowlight/adiabatic.hpp"
#include "slowlight/checks.hpp"
#include "slowlight/config.hpp"
#include "slowlight/model.hpp"
#include "slowlight/solver.hpp"

namespace golden {

// storage scenario (5, 20, R=4, x0=11, kappa 200, z_m 8)
constexpr double alpha = 2.8545985858;
constexpr double alpha_over_R2 = 0.1784124116;
constexpr double beta = 2.0559016994;
constexpr double beta_over_R2 = 0.1284938562;
constexpr double t_r1 = -2.19208589;
constexpr double t_rm = -1.76620759;
constexpr double t_r2 = -1.50449286;
constexpr double peak_wp = 10.3970500;
constexpr double r_min_escape = 1.19469632;  // for R below sqrt(alpha/2)
constexpr double S_5_20 = 1152.33110;
constexpr double S_20_20 = 1622.32390;
constexpr double S_10_20 = 1246.32966;
constexpr double S_10_40 = 4609.32439;
constexpr double depth_k200 = 2.8808277;
constexpr double depth_k700 = 1.1588028;
constexpr double matched_R_700 = 2.9229919;
constexpr double matched_R_200 = 1.3515353;
constexpr double fwhm_matched_200 = 1.5771118;
constexpr double fwhm_R1_coupling_only = 2.8024956;  // sqrt(5 pi / 2)
constexpr double a3_peak_5_20 = 0.2425356250;        // 1/sqrt(17)
constexpr double cross_area_R4 = 0.0498576;          // neglected overlap area
constexpr double lambda_minus_10_40_d120 = -12.8010989;
constexpr double erf_inv_m095008 = -1.3863877;  // erf_inv(-0.95008)

}  // namespace golden

inline const slowlight::SolveResult& canonical_run() {
  static slowlight::SolveResult r = slowlight::solve(
      slowlight::checks::storage_pair(), slowlight::checks::storage_medium(),
      slowlight::checks::storage_grid());
  return r;
}

inline const slowlight::AdiabaticTables& canonical_tables() {
  static slowlight::AdiabaticTables t = slowlight::tabulate_profiles(
      slowlight::checks::storage_pair(), slowlight::checks::storage_medium(),
      slowlight::checks::storage_grid(),
      slowlight::AdiabaticMode::case1_equal_kappa);
  return t;
}

// Small, fast scenario: single pulse pair, short cell, stiffness-safe.
inline slowlight::PulsePair small_pair() {
  slowlight::PulsePair p;
  p.omega_p0 = 5.0;
  p.omega_c0 = 20.0;
  p.R = 0.0;
  p.x0 = 11.0;
  return p;
}

inline slowlight::MediumParams small_medium(double z_m = 0.5) {
  slowlight::MediumParams m;
  m.kappa12 = 200.0;
  m.kappa32 = 200.0;
  m.z_m = z_m;
  return m;
}

inline slowlight::GridSpec small_grid(std::size_t n_x = 1024,
                                      std::size_t n_z = 51) {
  slowlight::GridSpec g;
  g.x_min = -6.0;
  g.x_max = 6.0;
  g.n_x = n_x;
  g.n_z = n_z;
  return g;
}
