#pragma once

#include <span>
#include <string>

namespace areosync {

/// Central body of the restricted two-body problem.
struct PlanetModel {
  double mu = 0.0;                 // gravitational parameter, m^3/s^2
  double equatorial_radius = 0.0;  // m, reporting only

  void validate() const;  // throws std::invalid_argument
};

/// Perturbing moon on a circular, equatorial orbit.
struct MoonModel {
  std::string name;
  double mu_p = 0.0;           // gravitational parameter, m^3/s^2
  double orbit_radius = 0.0;   // m, circular approximation at periapsis
  double angular_rate = 0.0;   // rad/s
  double initial_phase = 0.0;  // rad

  void validate() const;

  /// Moon with Keplerian rate sqrt(mu_planet / orbit_radius^3).
  static MoonModel circular(const PlanetModel& planet, std::string name,
                            double mu_p, double orbit_radius,
                            double initial_phase = 0.0);
};

/// Full planar orbital state of one satellite. theta is kept unwrapped;
/// wrap only for display.
struct SatelliteTruthState {
  double r = 0.0;      // radial distance, m
  double v = 0.0;      // radial velocity, m/s
  double omega = 0.0;  // angular velocity, rad/s
  double theta = 0.0;  // angular position, rad, unwrapped
  double mass = 0.0;   // kg
};

/// Planar specific-force perturbation in the satellite's radial/tangential frame.
struct PerturbationAccel {
  double a_r = 0.0;      // m/s^2
  double a_theta = 0.0;  // m/s^2
};

struct ThrustCommand {
  double tau_r = 0.0;      // N
  double tau_theta = 0.0;  // N
  bool saturated = false;
};

struct StateDerivative {
  double r_dot = 0.0;
  double v_dot = 0.0;
  double omega_dot = 0.0;
  double theta_dot = 0.0;
};

struct MoonPosition {
  double radius;  // m
  double angle;   // rad
};

/// Net inward specific force mu/r^2 - r*omega^2. The truth dynamics and the
/// radial thrust law both evaluate this through the same function so the
/// feedforward cancellation is exact in floating point.
inline double radial_imbalance(double mu, double r, double omega) {
  return mu / (r * r) - r * (omega * omega);
}

/// Time derivatives of the planar truth model with thrust and perturbations:
///   r'     = v
///   v'     = r w^2 - mu/r^2 + tau_r/m + a_r
///   omega' = -2 v w / r + tau_theta/(m r) + a_theta / r
///   theta' = omega
/// Throws SimulationError on non-finite inputs or r <= 0.
StateDerivative truth_derivatives(const SatelliteTruthState& state,
                                  const ThrustCommand& thrust,
                                  const PerturbationAccel& perturb, double mu);

/// Circular ephemeris: radius is constant, angle advances at the Keplerian rate.
MoonPosition moon_position(const MoonModel& moon, double t);

/// Specific force on the satellite from one moon, expressed in the satellite's
/// radial/tangential frame. The relative position is formed in the inertial
/// plane and rotated by the satellite's angular position. Throws
/// SimulationError when the separation drops below min_separation (the
/// point-mass model is invalid in the collision regime).
PerturbationAccel moon_perturbation(const SatelliteTruthState& state,
                                    const MoonModel& moon, double t,
                                    double min_separation = 1000.0);

/// Componentwise sum of moon_perturbation over all moons; empty list gives zero.
PerturbationAccel total_perturbation(const SatelliteTruthState& state,
                                     std::span<const MoonModel> moons, double t,
                                     double min_separation = 1000.0);

}  // namespace areosync
