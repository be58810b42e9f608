#pragma once
// Flat JSON config <-> scenario structs. Keys mirror the struct field names;
// grid keys are optional and fall back to a window sized for the pulse
// support with steps fine enough for the five-significant-figure
// refinement check (dx from n_x = 4096 over [-6, x0+6], dz <= 0.01 cm).

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "slowlight/model.hpp"

namespace slowlight {

struct Scenario {
  PulsePair pair;
  MediumParams medium;
  GridSpec grid;
};

inline GridSpec default_grid(const PulsePair& pair, const MediumParams& medium) {
  GridSpec g;
  g.x_min = -6.0;
  g.x_max = (pair.shape == PulseShape::gaussian && pair.R > 0.0)
                ? pair.x0 + 6.0
                : 6.0;
  if (pair.shape == PulseShape::custom && !pair.xs.empty()) {
    g.x_min = pair.xs.front() - 1.0;
    g.x_max = pair.xs.back() + 1.0;
  }
  g.n_x = 4096;
  g.n_z = std::size_t(std::ceil(medium.z_m / 0.01)) + 1;
  if (g.n_z < 2) g.n_z = 2;
  return g;
}

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("config: missing or non-numeric key '") +
                      key + "'");
  return j[key].get<double>();
}

inline double number_or(const nlohmann::json& j, const char* key,
                        double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError(std::string("config: non-numeric key '") + key + "'");
  return j[key].get<double>();
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  s.pair.omega_p0 = detail::require_number(j, "omega_p0");
  s.pair.omega_c0 = detail::require_number(j, "omega_c0");
  s.pair.R = detail::number_or(j, "R", 0.0);
  s.pair.x0 = detail::number_or(j, "x0", 0.0);

  std::string shape = j.value("shape", std::string("gaussian"));
  if (shape == "gaussian") {
    s.pair.shape = PulseShape::gaussian;
  } else if (shape == "custom") {
    s.pair.shape = PulseShape::custom;
    if (!j.contains("xs") || !j.contains("wp_samples") ||
        !j.contains("wc_samples"))
      throw ConfigError("config: custom shape needs xs/wp_samples/wc_samples");
    s.pair.xs = j["xs"].get<std::vector<double>>();
    s.pair.wp_samples = j["wp_samples"].get<std::vector<double>>();
    s.pair.wc_samples = j["wc_samples"].get<std::vector<double>>();
  } else {
    throw ConfigError("config: shape must be 'gaussian' or 'custom'");
  }

  s.medium.kappa12 = detail::require_number(j, "kappa12");
  s.medium.kappa32 = detail::number_or(j, "kappa32", s.medium.kappa12);
  s.medium.gamma2 = detail::number_or(j, "gamma2", 0.0);
  s.medium.delta = detail::number_or(j, "delta", 0.0);
  s.medium.z_m = detail::require_number(j, "z_m");

  GridSpec d = default_grid(s.pair, s.medium);
  s.grid.x_min = detail::number_or(j, "x_min", d.x_min);
  s.grid.x_max = detail::number_or(j, "x_max", d.x_max);
  double nx = detail::number_or(j, "n_x", double(d.n_x));
  double nz = detail::number_or(j, "n_z", double(d.n_z));
  if (nx < 2 || nz < 2 || nx != std::floor(nx) || nz != std::floor(nz))
    throw ConfigError("config: n_x and n_z must be integers >= 2");
  s.grid.n_x = std::size_t(nx);
  s.grid.n_z = std::size_t(nz);
  return s;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["omega_p0"] = s.pair.omega_p0;
  j["omega_c0"] = s.pair.omega_c0;
  j["R"] = s.pair.R;
  j["x0"] = s.pair.x0;
  j["shape"] = s.pair.shape == PulseShape::gaussian ? "gaussian" : "custom";
  if (s.pair.shape == PulseShape::custom) {
    j["xs"] = s.pair.xs;
    j["wp_samples"] = s.pair.wp_samples;
    j["wc_samples"] = s.pair.wc_samples;
  }
  j["kappa12"] = s.medium.kappa12;
  j["kappa32"] = s.medium.kappa32;
  j["gamma2"] = s.medium.gamma2;
  j["delta"] = s.medium.delta;
  j["z_m"] = s.medium.z_m;
  j["x_min"] = s.grid.x_min;
  j["x_max"] = s.grid.x_max;
  j["n_x"] = s.grid.n_x;
  j["n_z"] = s.grid.n_z;
  return j;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: parse failure in '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace slowlight
