#include "areosync/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "areosync/constants.hpp"
#include "areosync/errors.hpp"

namespace areosync {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Problems {
 public:
  void add(const std::string& msg) { messages_.push_back(msg); }
  void raise_if_any() {
    if (!messages_.empty()) throw ValidationError(std::move(messages_));
  }
  std::vector<std::string>& messages() { return messages_; }

 private:
  std::vector<std::string> messages_;
};

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed, Problems& problems) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      problems.add(context + ": unknown key \"" + item.key() + "\"");
    }
  }
}

bool read_number(const json& obj, const std::string& context, const char* key,
                 double& out, Problems& problems) {
  if (!obj.contains(key)) return false;
  const json& value = obj.at(key);
  if (!value.is_number()) {
    problems.add(context + "." + key + ": expected a number");
    return false;
  }
  out = value.get<double>();
  return true;
}

bool read_bool(const json& obj, const std::string& context, const char* key,
               bool& out, Problems& problems) {
  if (!obj.contains(key)) return false;
  const json& value = obj.at(key);
  if (!value.is_boolean()) {
    problems.add(context + "." + key + ": expected a boolean");
    return false;
  }
  out = value.get<bool>();
  return true;
}

bool read_string(const json& obj, const std::string& context, const char* key,
                 std::string& out, Problems& problems) {
  if (!obj.contains(key)) return false;
  const json& value = obj.at(key);
  if (!value.is_string()) {
    problems.add(context + "." + key + ": expected a string");
    return false;
  }
  out = value.get<std::string>();
  return true;
}

void read_window(const json& obj, const std::string& context, const char* key,
                 UniformWindow& window, double unit_scale, Problems& problems) {
  if (!obj.contains(key)) return;
  const json& value = obj.at(key);
  const std::string ctx = context + "." + key;
  if (!value.is_object()) {
    problems.add(ctx + ": expected an object with nominal/half_width");
    return;
  }
  check_keys(value, ctx, {"nominal", "half_width"}, problems);
  double nominal = window.nominal / unit_scale;
  double half_width = window.half_width / unit_scale;
  read_number(value, ctx, "nominal", nominal, problems);
  read_number(value, ctx, "half_width", half_width, problems);
  window.nominal = nominal * unit_scale;
  window.half_width = half_width * unit_scale;
}

}  // namespace

std::string RunArtifacts::resolve(const std::string& filename) const {
  std::string dir = out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("AREOSYNC_OUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  return (std::filesystem::path(dir) / filename).string();
}

ParsedConfig parse_config(const std::string& json_text) {
  Problems problems;

  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    problems.add(std::string("JSON parse error: ") + e.what());
    problems.raise_if_any();
  }
  if (!doc.is_object()) {
    problems.add("config root must be a JSON object");
    problems.raise_if_any();
  }

  check_keys(doc, "config",
             {"constants", "planet", "moons", "n_sats", "sat_mass_kg", "r_d_km",
              "gains", "tau_max_N", "saturation_mode", "ic", "dt_s",
              "horizon_sols", "seed", "moons_enabled", "coordination_enabled",
              "logging_interval_s", "acquisition_tol_deg", "output"},
             problems);

  ParsedConfig parsed;
  read_string(doc, "config", "constants", parsed.constant_set, problems);
  if (parsed.constant_set != "mars-example") {
    problems.add("config.constants: unknown constant set \"" +
                 parsed.constant_set + "\" (available: mars-example)");
    problems.raise_if_any();
  }
  Scenario& s = parsed.scenario;
  s = mars_example_scenario();

  // Planet first: the desired orbit and moon rates derive from mu.
  double mu = s.planet.mu;
  double equatorial_radius_km = s.planet.equatorial_radius / 1000.0;
  if (doc.contains("planet")) {
    const json& planet = doc.at("planet");
    if (planet.is_object()) {
      check_keys(planet, "planet", {"mu_m3s2", "equatorial_radius_km"}, problems);
      read_number(planet, "planet", "mu_m3s2", mu, problems);
      read_number(planet, "planet", "equatorial_radius_km", equatorial_radius_km,
                  problems);
    } else {
      problems.add("planet: expected an object");
    }
  }
  s.planet.mu = mu;
  s.planet.equatorial_radius = equatorial_radius_km * 1000.0;

  if (doc.contains("moons")) {
    const json& moons = doc.at("moons");
    if (!moons.is_array()) {
      problems.add("moons: expected an array");
    } else {
      s.moons.clear();
      int index = 0;
      for (const json& entry : moons) {
        const std::string ctx = "moons[" + std::to_string(index) + "]";
        if (!entry.is_object()) {
          problems.add(ctx + ": expected an object");
          ++index;
          continue;
        }
        check_keys(entry, ctx,
                   {"name", "mu_m3s2", "orbit_radius_km", "initial_phase_rad"},
                   problems);
        std::string name = "moon-" + std::to_string(index);
        double moon_mu = 0.0;
        double orbit_radius_km = 0.0;
        double phase = 0.0;
        read_string(entry, ctx, "name", name, problems);
        const bool has_mu = read_number(entry, ctx, "mu_m3s2", moon_mu, problems);
        const bool has_radius =
            read_number(entry, ctx, "orbit_radius_km", orbit_radius_km, problems);
        read_number(entry, ctx, "initial_phase_rad", phase, problems);
        if (!has_mu) problems.add(ctx + ": missing mu_m3s2");
        if (!has_radius) problems.add(ctx + ": missing orbit_radius_km");
        if (has_mu && has_radius && mu > 0.0 && orbit_radius_km > 0.0) {
          s.moons.push_back(MoonModel::circular(s.planet, name, moon_mu,
                                                orbit_radius_km * 1000.0, phase));
        }
        ++index;
      }
    }
  } else if (doc.contains("planet")) {
    // The default moons belong to the default planet; rebuild their rates for
    // an overridden planet.
    for (MoonModel& moon : s.moons) {
      moon = MoonModel::circular(s.planet, moon.name, moon.mu_p,
                                 moon.orbit_radius, moon.initial_phase);
    }
  }

  double n_sats = s.n_sats;
  if (read_number(doc, "config", "n_sats", n_sats, problems)) {
    if (n_sats != std::floor(n_sats)) {
      problems.add("n_sats: expected an integer");
    }
    s.n_sats = static_cast<int>(n_sats);
  }
  read_number(doc, "config", "sat_mass_kg", s.sat_mass, problems);

  double r_d_km = s.desired.r_d / 1000.0;
  read_number(doc, "config", "r_d_km", r_d_km, problems);
  if (mu > 0.0 && r_d_km > 0.0) {
    s.desired = DesiredOrbit::circular(mu, r_d_km * 1000.0);
  } else {
    problems.add("r_d_km / planet.mu_m3s2: must be positive");
  }

  if (doc.contains("gains")) {
    const json& gains = doc.at("gains");
    if (gains.is_object()) {
      check_keys(gains, "gains",
                 {"k_r", "k_v", "k_omega", "kc_bar", "kc_floor", "c", "t_f_sols"},
                 problems);
      read_number(gains, "gains", "k_r", s.gains.k_r, problems);
      read_number(gains, "gains", "k_v", s.gains.k_v, problems);
      read_number(gains, "gains", "k_omega", s.gains.k_omega, problems);
      read_number(gains, "gains", "kc_bar", s.gains.kc_bar, problems);
      read_number(gains, "gains", "kc_floor", s.gains.kc_floor, problems);
      read_number(gains, "gains", "c", s.gains.c, problems);
      double t_f_sols = constants::seconds_to_sols(s.gains.t_f);
      if (read_number(gains, "gains", "t_f_sols", t_f_sols, problems)) {
        s.gains.t_f = constants::sols_to_seconds(t_f_sols);
      }
    } else {
      problems.add("gains: expected an object");
    }
  }

  read_number(doc, "config", "tau_max_N", s.tau_max, problems);

  std::string saturation = "warn-only";
  if (read_string(doc, "config", "saturation_mode", saturation, problems)) {
    if (saturation == "warn-only") {
      s.saturation_mode = SaturationMode::kWarnOnly;
    } else if (saturation == "clamp") {
      s.saturation_mode = SaturationMode::kClamp;
    } else {
      problems.add("saturation_mode: expected \"warn-only\" or \"clamp\"");
    }
  }

  if (doc.contains("ic")) {
    const json& ic = doc.at("ic");
    if (ic.is_object()) {
      check_keys(ic, "ic", {"r_km", "v_mps", "omega_radps", "theta_rad", "theta_mode"},
                 problems);
      read_window(ic, "ic", "r_km", s.ic.r, 1000.0, problems);
      read_window(ic, "ic", "v_mps", s.ic.v, 1.0, problems);
      read_window(ic, "ic", "omega_radps", s.ic.omega, 1.0, problems);
      read_window(ic, "ic", "theta_rad", s.ic.theta, 1.0, problems);
      std::string theta_mode = "clustered";
      if (read_string(ic, "ic", "theta_mode", theta_mode, problems)) {
        if (theta_mode == "clustered") {
          s.ic.theta_mode = ThetaMode::kClustered;
        } else if (theta_mode == "spaced") {
          s.ic.theta_mode = ThetaMode::kSpaced;
        } else {
          problems.add("ic.theta_mode: expected \"clustered\" or \"spaced\"");
        }
      }
    } else {
      problems.add("ic: expected an object");
    }
  }

  read_number(doc, "config", "dt_s", s.dt, problems);
  double horizon_sols = constants::seconds_to_sols(s.horizon);
  if (read_number(doc, "config", "horizon_sols", horizon_sols, problems)) {
    s.horizon = constants::sols_to_seconds(horizon_sols);
  }
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (seed.is_number_integer() && seed.get<long long>() >= 0) {
      s.seed = seed.get<std::uint64_t>();
    } else {
      problems.add("seed: expected a nonnegative integer");
    }
  }
  read_bool(doc, "config", "moons_enabled", s.moons_enabled, problems);
  read_bool(doc, "config", "coordination_enabled", s.coordination_enabled,
            problems);
  read_number(doc, "config", "logging_interval_s", s.logging_interval, problems);
  read_number(doc, "config", "acquisition_tol_deg", s.acquisition_tol_deg,
              problems);

  if (doc.contains("output")) {
    const json& output = doc.at("output");
    if (output.is_object()) {
      check_keys(output, "output",
                 {"out_dir", "trajectory_csv", "links_csv", "report_json",
                  "certification_json", "plot_csv", "plot_stride"},
                 problems);
      RunArtifacts& a = parsed.artifacts;
      read_string(output, "output", "out_dir", a.out_dir, problems);
      read_string(output, "output", "trajectory_csv", a.trajectory_csv, problems);
      read_string(output, "output", "links_csv", a.links_csv, problems);
      read_string(output, "output", "report_json", a.report_json, problems);
      read_string(output, "output", "certification_json", a.certification_json,
                  problems);
      read_string(output, "output", "plot_csv", a.plot_csv, problems);
      double stride = a.plot_stride;
      if (read_number(output, "output", "plot_stride", stride, problems)) {
        if (stride < 0 || stride != std::floor(stride)) {
          problems.add("output.plot_stride: expected a nonnegative integer");
        } else {
          a.plot_stride = static_cast<int>(stride);
        }
      }
    } else {
      problems.add("output: expected an object");
    }
  }

  // The desired spacing is implied by the constellation size.
  if (s.n_sats >= 2) {
    s.link_output_fn = LinkOutputFn{2.0 * std::numbers::pi / s.n_sats, nullptr};
  }

  try {
    s.validate();
  } catch (const ValidationError& e) {
    for (const std::string& msg : e.problems()) problems.add(msg);
  }
  problems.raise_if_any();
  return parsed;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError({"cannot read config file: " + path});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ParsedConfig& config) {
  const Scenario& s = config.scenario;
  ordered_json doc;
  doc["constants"] = config.constant_set;
  doc["planet"] = {{"mu_m3s2", s.planet.mu},
                   {"equatorial_radius_km", s.planet.equatorial_radius / 1000.0}};
  ordered_json moons = ordered_json::array();
  for (const MoonModel& moon : s.moons) {
    moons.push_back({{"name", moon.name},
                     {"mu_m3s2", moon.mu_p},
                     {"orbit_radius_km", moon.orbit_radius / 1000.0},
                     {"initial_phase_rad", moon.initial_phase}});
  }
  doc["moons"] = moons;
  doc["n_sats"] = s.n_sats;
  doc["sat_mass_kg"] = s.sat_mass;
  doc["r_d_km"] = s.desired.r_d / 1000.0;
  doc["gains"] = {{"k_r", s.gains.k_r},
                  {"k_v", s.gains.k_v},
                  {"k_omega", s.gains.k_omega},
                  {"kc_bar", s.gains.kc_bar},
                  {"kc_floor", s.gains.kc_floor},
                  {"c", s.gains.c},
                  {"t_f_sols", constants::seconds_to_sols(s.gains.t_f)}};
  doc["tau_max_N"] = s.tau_max;
  doc["saturation_mode"] =
      s.saturation_mode == SaturationMode::kClamp ? "clamp" : "warn-only";
  auto window = [](const UniformWindow& w, double unit_scale) {
    return ordered_json{{"nominal", w.nominal / unit_scale},
                        {"half_width", w.half_width / unit_scale}};
  };
  doc["ic"] = {{"r_km", window(s.ic.r, 1000.0)},
               {"v_mps", window(s.ic.v, 1.0)},
               {"omega_radps", window(s.ic.omega, 1.0)},
               {"theta_rad", window(s.ic.theta, 1.0)},
               {"theta_mode",
                s.ic.theta_mode == ThetaMode::kSpaced ? "spaced" : "clustered"}};
  doc["dt_s"] = s.dt;
  doc["horizon_sols"] = constants::seconds_to_sols(s.horizon);
  doc["seed"] = s.seed;
  doc["moons_enabled"] = s.moons_enabled;
  doc["coordination_enabled"] = s.coordination_enabled;
  doc["logging_interval_s"] = s.logging_interval;
  doc["acquisition_tol_deg"] = s.acquisition_tol_deg;
  doc["output"] = {{"out_dir", config.artifacts.out_dir},
                   {"trajectory_csv", config.artifacts.trajectory_csv},
                   {"links_csv", config.artifacts.links_csv},
                   {"report_json", config.artifacts.report_json},
                   {"certification_json", config.artifacts.certification_json},
                   {"plot_csv", config.artifacts.plot_csv},
                   {"plot_stride", config.artifacts.plot_stride}};
  return doc.dump(2) + "\n";
}

}  // namespace areosync
