// Command-line front end: simulate (write field grids), predict (closed-form
// recurrence analytics), verify (check suites), compare (both engines plus
// agreement report). Exit codes: 0 success, 1 unexpected failure or failed
// verification, 2 configuration/validation errors, 3 solver/physics errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slowlight/adiabatic.hpp"
#include "slowlight/checks.hpp"
#include "slowlight/config.hpp"
#include "slowlight/diagnostics.hpp"
#include "slowlight/io.hpp"
#include "slowlight/model.hpp"
#include "slowlight/revival.hpp"
#include "slowlight/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slowlight;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string default_out_dir() {
  if (const char* env = std::getenv("SLOWLIGHT_OUT")) return env;
  return "out";
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void warn_on_failed_checks(const ValidationReport& report) {
  for (const ValidationCheck& c : report.checks)
    if (c.applicable && !c.passed)
      std::cerr << "warning: " << c.name << " (ratio " << c.ratio
                << ", threshold " << c.threshold << ")\n";
}

void make_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw IoError("io: cannot create output directory '" + out_dir +
                  "': " + ec.message());
}

json base_manifest(const std::string& command, const Scenario& sc) {
  json m;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = scenario_to_json(sc);
  m["outputs"] = json::array();
  return m;
}

void finish_manifest(json& manifest, const std::string& out_dir,
                     const Timer& timer) {
  manifest["wall_time_s"] = timer.seconds();
  write_json((fs::path(out_dir) / "manifest.json").string(), manifest);
}

int run_simulate(const std::string& config_path, const std::string& engine,
                 const std::string& out_dir, int refine, bool do_compare) {
  Timer timer;
  Scenario sc = load_scenario(config_path);
  warn_on_failed_checks(validate_config(sc.pair, sc.medium, sc.grid));
  make_out_dir(out_dir);
  json manifest = base_manifest(do_compare ? "compare" : "simulate", sc);
  manifest["engine"] = engine;
  manifest["refine"] = refine;
  auto record = [&](const fs::path& p) {
    manifest["outputs"].push_back(p.string());
    return p.string();
  };

  std::optional<AdiabaticSolution> ad;
  std::optional<SolveResult> num;

  if (engine == "adiabatic" || engine == "both") {
    AdiabaticMode mode = choose_mode(sc.pair, sc.medium);
    AdiabaticTables tables =
        tabulate_profiles(sc.pair, sc.medium, sc.grid, mode);
    for (const std::string& w : tables.warnings)
      std::cerr << "warning: " << w << "\n";
    ad = evaluate_adiabatic(tables, sc.medium, sc.grid);
    write_grid_csv(record(fs::path(out_dir) / "adiabatic_grid.csv"), *ad,
                   sc.medium.z_m);
    write_profile_csv(record(fs::path(out_dir) / "profiles.csv"), tables);
  }
  if (engine == "numeric" || engine == "both") {
    SolverOptions opt;
    opt.refine = refine;
    num = solve(sc.pair, sc.medium, sc.grid, opt);
    write_grid_csv(record(fs::path(out_dir) / "numeric_grid.csv"), *num,
                   sc.medium.z_m);
    write_json(record(fs::path(out_dir) / "summary.json"),
               summary_json(*num));
    std::cout << "numeric exit peak |w_p| = " << num->peak_abs_wp_exit
              << " at x = " << num->peak_time_exit << "\n";
  }
  if (ad && num) {
    ComparisonReport rep = compare(*ad, *num);
    write_json(record(fs::path(out_dir) / "comparison.json"),
               comparison_json(rep));
    std::cout << "engine agreement: max_diff_rel_peak = "
              << rep.max_diff_rel_peak
              << ", peak_amp_err = " << rep.peak_amp_err << "\n";
  }
  finish_manifest(manifest, out_dir, timer);
  std::cout << "wrote " << manifest["outputs"].size() << " files to "
            << out_dir << "\n";
  return 0;
}

int run_predict(const std::string& config_path, const std::string& out_dir) {
  Timer timer;
  Scenario sc = load_scenario(config_path);
  warn_on_failed_checks(validate_config(sc.pair, sc.medium, sc.grid));
  json out;
  try {
    RevivalEstimate est = revival_estimate(sc.pair, sc.medium);
    out["trapped"] = true;
    out["alpha"] = est.alpha;
    out["beta"] = est.beta;
    out["alpha_over_R2"] = est.alpha / (sc.pair.R * sc.pair.R);
    out["beta_over_R2"] = est.beta / (sc.pair.R * sc.pair.R);
    out["t_r1"] = est.t_r1;
    out["t_rm"] = est.t_rm;
    out["t_r2"] = est.t_r2;
    out["peak_wp"] = est.peak_wp;
    out["fwhm"] = est.fwhm;
    out["cross_overlap_rel"] = est.cross_overlap_rel;
  } catch (const EscapeError& e) {
    out["trapped"] = false;
    out["message"] = e.what();
    if (std::isfinite(e.r_min)) out["r_min_to_trap"] = e.r_min;
  }
  try {
    out["matched_R"] = matched_R(sc.pair, sc.medium);
  } catch (const NoMatchedRError&) {
    out["matched_R"] = nullptr;
  }
  std::cout << out.dump(2) << "\n";
  make_out_dir(out_dir);
  json manifest = base_manifest("predict", sc);
  write_json((fs::path(out_dir) / "predict.json").string(), out);
  manifest["outputs"].push_back(
      (fs::path(out_dir) / "predict.json").string());
  finish_manifest(manifest, out_dir, timer);
  return 0;
}

int run_verify(const std::string& suite) {
  checks::CheckContext ctx;
  std::vector<checks::Suite> suites = checks::run_suite(suite, ctx);
  bool ok = true;
  for (const checks::Suite& s : suites) {
    std::cout << (s.passed() ? "[pass] " : "[FAIL] ") << s.name << " ("
              << s.n_passed() << "/" << s.lines.size() << " checks)\n";
    checks::print_suite(s, std::cout);
    ok = ok && s.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-level slow-light pulse storage and regeneration"};
  app.require_subcommand(1);

  std::string config_path, out_dir = default_out_dir();
  std::string engine = "both", suite;
  int refine = 1;

  CLI::App* sim =
      app.add_subcommand("simulate", "run the selected engines and write "
                                     "field grids, summary, and manifest");
  sim->add_option("--config", config_path, "scenario JSON file")->required();
  sim->add_option("--engine", engine, "adiabatic|numeric|both")
      ->check(CLI::IsMember({"adiabatic", "numeric", "both"}));
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--refine", refine, "extra refinement for convergence studies (1, 2, 4)")
      ->check(CLI::IsMember({1, 2, 4}));

  CLI::App* pre = app.add_subcommand(
      "predict", "closed-form recurrence analytics for a scenario");
  pre->add_option("--config", config_path, "scenario JSON file")->required();
  pre->add_option("--out", out_dir, "output directory");

  CLI::App* ver =
      app.add_subcommand("verify", "run a check suite and report pass/fail");
  ver->add_option("--suite", suite,
                  "golden-values|conservation|convergence|detuning")
      ->required()
      ->check(CLI::IsMember(
          {"golden-values", "conservation", "convergence", "detuning"}));

  CLI::App* cmp = app.add_subcommand(
      "compare", "run both engines and write the agreement report");
  cmp->add_option("--config", config_path, "scenario JSON file")->required();
  cmp->add_option("--out", out_dir, "output directory");
  cmp->add_option("--refine", refine, "extra refinement for convergence studies (1, 2, 4)")
      ->check(CLI::IsMember({1, 2, 4}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed())
      return run_simulate(config_path, engine, out_dir, refine, false);
    if (pre->parsed()) return run_predict(config_path, out_dir);
    if (ver->parsed()) return run_verify(suite);
    if (cmp->parsed())
      return run_simulate(config_path, "both", out_dir, refine, true);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const StiffnessError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateFieldError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const EscapeError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const NoMatchedRError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
