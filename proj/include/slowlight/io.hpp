#pragma once
// Output writers. CSV numbers are printed with %.9g so identical inputs give
// byte-identical files; JSON goes through the library serializer.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowlight/adiabatic.hpp"
#include "slowlight/config.hpp"
#include "slowlight/diagnostics.hpp"
#include "slowlight/model.hpp"
#include "slowlight/solver.hpp"

namespace slowlight {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline const char* grid_csv_header() {
  return "x,z,re_wp,im_wp,abs_wp,re_wc,im_wc,abs_wc,abs_a1,abs_a2,abs_a3";
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw IoError("io: cannot open '" + path + "' for writing");
  return out;
}

inline void write_grid_rows(std::ofstream& out, const GridSpec& grid,
                            double z_m, const FieldGrid& fields,
                            const std::vector<complex>* a1,
                            const std::vector<complex>* a2,
                            const std::vector<complex>* a3) {
  out << grid_csv_header() << "\n";
  for (std::size_t i = 0; i < grid.n_z; ++i) {
    double z = grid.z_at(i, z_m);
    for (std::size_t j = 0; j < grid.n_x; ++j) {
      std::size_t o = i * grid.n_x + j;
      complex wp = fields.w_p[o], wc = fields.w_c[o];
      out << fmt_g9(grid.x_at(j)) << ',' << fmt_g9(z) << ','
          << fmt_g9(wp.real()) << ',' << fmt_g9(wp.imag()) << ','
          << fmt_g9(std::abs(wp)) << ',' << fmt_g9(wc.real()) << ','
          << fmt_g9(wc.imag()) << ',' << fmt_g9(std::abs(wc)) << ','
          << fmt_g9(a1 ? std::abs((*a1)[o]) : 0.0) << ','
          << fmt_g9(a2 ? std::abs((*a2)[o]) : 0.0) << ','
          << fmt_g9(a3 ? std::abs((*a3)[o]) : 0.0) << "\n";
    }
  }
}

}  // namespace detail

inline void write_grid_csv(const std::string& path, const SolveResult& res,
                           double z_m) {
  std::ofstream out = detail::open_out(path);
  detail::write_grid_rows(out, res.grid, z_m, res.fields,
                          res.amplitudes_stored ? &res.amps.a1 : nullptr,
                          res.amplitudes_stored ? &res.amps.a2 : nullptr,
                          res.amplitudes_stored ? &res.amps.a3 : nullptr);
}

// The traveling-wave solution carries A3 explicitly; A1 follows from the
// unit-norm dark state with A2 = 0.
inline void write_grid_csv(const std::string& path,
                           const AdiabaticSolution& sol, double z_m) {
  std::ofstream out = detail::open_out(path);
  std::vector<complex> a1(sol.a3.size()), a2(sol.a3.size(), complex(0, 0));
  for (std::size_t k = 0; k < sol.a3.size(); ++k) {
    double rest = 1.0 - std::norm(sol.a3[k]);
    a1[k] = complex(rest > 0.0 ? std::sqrt(rest) : 0.0, 0.0);
  }
  detail::write_grid_rows(out, sol.grid, z_m, sol.fields, &a1, &a2, &sol.a3);
}

inline void write_profile_csv(const std::string& path,
                              const AdiabaticTables& t) {
  std::ofstream out = detail::open_out(path);
  out << "s,F_p,F_c\n";
  for (std::size_t k = 0; k < t.knot_s.size(); ++k) {
    double fp = t.knot_fp[k];
    double rest = 1.0 - fp * fp;
    out << fmt_g9(t.knot_s[k]) << ',' << fmt_g9(fp) << ','
        << fmt_g9(rest > 0.0 ? std::sqrt(rest) : 0.0) << "\n";
  }
}

inline nlohmann::json summary_json(const SolveResult& res) {
  nlohmann::json j;
  j["norm_max_dev"] = res.norm_max_dev;
  j["flux_max_dev"] = res.flux_max_dev;
  j["flux_relation_residual"] = res.flux_relation_residual;
  j["peak_abs_wp_exit"] = res.peak_abs_wp_exit;
  j["peak_time_exit"] = res.peak_time_exit;
  return j;
}

inline nlohmann::json comparison_json(const ComparisonReport& rep) {
  nlohmann::json j;
  j["max_rel_err_wp"] = rep.max_rel_err_wp;
  j["max_diff_rel_peak"] = rep.max_diff_rel_peak;
  j["peak_amp_err"] = rep.peak_amp_err;
  j["peak_time_err"] = rep.peak_time_err;
  j["a3_plateau_err"] = rep.a3_plateau_err;
  j["flux_residual"] = rep.flux_residual;
  j["norm_residual"] = rep.norm_residual;
  return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = detail::open_out(path);
  out << j.dump(2) << "\n";
}

inline void write_refinement_csv(const std::string& path,
                                 const std::vector<RefinementRow>& rows) {
  std::ofstream out = detail::open_out(path);
  out << "factor,delta_fields,delta_amps,delta\n";
  for (const RefinementRow& r : rows)
    out << r.factor << ',' << fmt_g9(r.delta_fields) << ','
        << fmt_g9(r.delta_amps) << ',' << fmt_g9(r.delta) << "\n";
}

inline void write_detuning_csv(const std::string& path,
                               const std::vector<DetuningRow>& rows) {
  std::ofstream out = detail::open_out(path);
  out << "delta,max_diff_rel_peak,condition_ratio,far_detuned_ok\n";
  for (const DetuningRow& r : rows)
    out << fmt_g9(r.delta) << ',' << fmt_g9(r.max_diff_rel_peak) << ','
        << fmt_g9(r.condition_ratio) << ',' << (r.far_detuned_ok ? 1 : 0)
        << "\n";
}

}  // namespace slowlight
