#include "areosync/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "areosync/constants.hpp"
#include "areosync/errors.hpp"

namespace areosync {

void Scenario::validate() const {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  try {
    planet.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  for (const MoonModel& moon : moons) {
    try {
      moon.validate();
    } catch (const std::invalid_argument& e) {
      problems.emplace_back(e.what());
    }
  }

  require(n_sats >= 2, "n_sats: need at least 2 satellites");
  require(sat_mass > 0.0, "sat_mass_kg: must be positive");
  require(desired.r_d > 0.0, "r_d_km: must be positive");
  require(desired.v_d == 0.0, "desired orbit: v_d must be 0");
  if (planet.mu > 0.0 && desired.r_d > 0.0) {
    const double expected =
        std::sqrt(planet.mu / (desired.r_d * desired.r_d * desired.r_d));
    require(std::abs(desired.omega_d - expected) <= 1e-12 * expected,
            "desired orbit: omega_d must be derived as sqrt(mu / r_d^3)");
  }

  try {
    gains.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }

  require(ic.r.half_width >= 0.0 && ic.v.half_width >= 0.0 &&
              ic.omega.half_width >= 0.0 && ic.theta.half_width >= 0.0,
          "ic: half-widths must be nonnegative");
  require(ic.r.nominal - ic.r.half_width > 0.0,
          "ic: radial window must stay positive");

  require(dt > 0.0, "dt_s: must be positive");
  require(horizon >= 0.0, "horizon_sols: must be nonnegative");
  require(tau_max > 0.0, "tau_max_N: must be positive");
  require(acquisition_tol_deg > 0.0, "acquisition_tol_deg: must be positive");
  require(logging_interval >= dt, "logging_interval_s: must be at least dt");
  if (dt > 0.0 && logging_interval >= dt) {
    const double ratio = logging_interval / dt;
    require(std::abs(ratio - std::llround(ratio)) <= 1e-9 * ratio,
            "logging_interval_s: must be an integer multiple of dt");
  }
  require(std::isfinite(link_output_fn.theta_rel_d),
          "link output: theta_rel_d must be finite");

  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
}

Scenario mars_example_scenario() {
  namespace c = constants;
  Scenario s;
  s.planet = {c::kMuMars, c::kMarsEquatorialRadius};
  s.moons = {
      MoonModel::circular(s.planet, "phobos", c::kMuPhobos, c::kPhobosOrbitRadius),
      MoonModel::circular(s.planet, "deimos", c::kMuDeimos, c::kDeimosOrbitRadius),
  };
  s.n_sats = 10;
  s.sat_mass = c::kDefaultSatelliteMass;
  s.desired = DesiredOrbit::circular(c::kMuMars, c::kAreostationaryRadius);
  s.gains = GainSet{};
  s.ic = InitialConditionSpec{};
  s.dt = 10.0;
  s.horizon = c::sols_to_seconds(355.0);
  s.seed = 45u;
  s.moons_enabled = true;
  s.coordination_enabled = true;
  s.saturation_mode = SaturationMode::kWarnOnly;
  s.tau_max = c::kDefaultTauMax;
  s.logging_interval = 1000.0;
  s.acquisition_tol_deg = 0.5;
  s.link_output_fn = LinkOutputFn{2.0 * std::numbers::pi / s.n_sats, nullptr};
  return s;
}

}  // namespace areosync
