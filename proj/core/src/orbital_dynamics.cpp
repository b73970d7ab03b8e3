#include "areosync/orbital_dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "areosync/errors.hpp"

namespace areosync {

void PlanetModel::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("PlanetModel: mu must be positive and finite");
  }
  if (equatorial_radius < 0.0 || !std::isfinite(equatorial_radius)) {
    throw std::invalid_argument("PlanetModel: equatorial_radius must be nonnegative");
  }
}

void MoonModel::validate() const {
  if (mu_p < 0.0 || !std::isfinite(mu_p)) {
    throw std::invalid_argument("MoonModel '" + name + "': mu_p must be nonnegative");
  }
  if (!(orbit_radius > 0.0) || !std::isfinite(orbit_radius)) {
    throw std::invalid_argument("MoonModel '" + name + "': orbit_radius must be positive");
  }
  if (!std::isfinite(angular_rate) || !std::isfinite(initial_phase)) {
    throw std::invalid_argument("MoonModel '" + name + "': non-finite ephemeris parameter");
  }
}

MoonModel MoonModel::circular(const PlanetModel& planet, std::string name,
                              double mu_p, double orbit_radius,
                              double initial_phase) {
  planet.validate();
  MoonModel moon;
  moon.name = std::move(name);
  moon.mu_p = mu_p;
  moon.orbit_radius = orbit_radius;
  moon.angular_rate = std::sqrt(planet.mu / (orbit_radius * orbit_radius * orbit_radius));
  moon.initial_phase = initial_phase;
  moon.validate();
  return moon;
}

StateDerivative truth_derivatives(const SatelliteTruthState& state,
                                  const ThrustCommand& thrust,
                                  const PerturbationAccel& perturb, double mu) {
  if (!(state.r > 0.0)) {
    throw SimulationError("truth_derivatives: radius is not positive (r = " +
                          std::to_string(state.r) + " m)");
  }
  if (!(state.mass > 0.0)) {
    throw SimulationError("truth_derivatives: mass is not positive");
  }
  if (!std::isfinite(state.r) || !std::isfinite(state.v) ||
      !std::isfinite(state.omega) || !std::isfinite(state.theta) ||
      !std::isfinite(thrust.tau_r) || !std::isfinite(thrust.tau_theta) ||
      !std::isfinite(perturb.a_r) || !std::isfinite(perturb.a_theta)) {
    throw SimulationError("truth_derivatives: non-finite input");
  }

  StateDerivative d;
  d.r_dot = state.v;
  d.v_dot = -radial_imbalance(mu, state.r, state.omega) +
            thrust.tau_r / state.mass + perturb.a_r;
  d.omega_dot = -2.0 * state.v * state.omega / state.r +
                thrust.tau_theta / (state.mass * state.r) +
                perturb.a_theta / state.r;
  d.theta_dot = state.omega;

  if (!std::isfinite(d.v_dot) || !std::isfinite(d.omega_dot)) {
    throw SimulationError("truth_derivatives: non-finite derivative");
  }
  return d;
}

MoonPosition moon_position(const MoonModel& moon, double t) {
  return {moon.orbit_radius, moon.initial_phase + moon.angular_rate * t};
}

PerturbationAccel moon_perturbation(const SatelliteTruthState& state,
                                    const MoonModel& moon, double t,
                                    double min_separation) {
  if (moon.mu_p == 0.0) {
    return {};
  }
  const MoonPosition pos = moon_position(moon, t);

  const double cos_sat = std::cos(state.theta);
  const double sin_sat = std::sin(state.theta);
  const double cos_moon = std::cos(pos.angle);
  const double sin_moon = std::sin(pos.angle);

  // Satellite position relative to the moon, inertial plane components.
  const double rel_x = state.r * cos_sat - pos.radius * cos_moon;
  const double rel_y = state.r * sin_sat - pos.radius * sin_moon;

  const double dist_sq = rel_x * rel_x + rel_y * rel_y;
  const double dist = std::sqrt(dist_sq);
  if (dist < min_separation) {
    throw SimulationError("moon_perturbation: satellite within " +
                          std::to_string(min_separation) + " m of moon '" +
                          moon.name + "' (separation " + std::to_string(dist) +
                          " m); point-mass model invalid");
  }

  const double scale = -moon.mu_p / (dist_sq * dist);
  PerturbationAccel a;
  a.a_r = scale * (cos_sat * rel_x + sin_sat * rel_y);
  a.a_theta = scale * (-sin_sat * rel_x + cos_sat * rel_y);
  return a;
}

PerturbationAccel total_perturbation(const SatelliteTruthState& state,
                                     std::span<const MoonModel> moons, double t,
                                     double min_separation) {
  PerturbationAccel total;
  for (const MoonModel& moon : moons) {
    const PerturbationAccel a = moon_perturbation(state, moon, t, min_separation);
    total.a_r += a.a_r;
    total.a_theta += a.a_theta;
  }
  return total;
}

}  // namespace areosync
