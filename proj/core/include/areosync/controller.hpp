#pragma once

#include "areosync/constants.hpp"
#include "areosync/orbital_dynamics.hpp"

namespace areosync {

enum class Phase { kAcquisition, kStationKeeping };

enum class SaturationMode { kWarnOnly, kClamp };

/// Controller gains. k_r, k_v and k_omega act at the specific-force level; the
/// thrust laws multiply by satellite mass only when emitting newtons, so the
/// closed loop is independent of mass.
struct GainSet {
  double k_r = 1e-5;      // radial position gain, 1/s^2
  double k_v = 1e-4;      // radial velocity gain, 1/s
  double k_omega = 1e4;   // angular-velocity gain, m/s (applied as k_omega / r)
  double kc_bar = 1e11;   // coordination scale at t = 0
  double kc_floor = 1e9;  // asymptotic coordination scale
  double c = 30.0;        // dimensionless decay constant
  double t_f = 355.0 * constants::kSecondsPerSol;  // acquisition horizon, s

  void validate() const;  // throws std::invalid_argument
};

/// Desired circular orbit. omega_d is always derived from (mu, r_d); an
/// independently chosen value would silently break the equilibrium.
struct DesiredOrbit {
  double r_d = 0.0;      // m
  double v_d = 0.0;      // m/s, always 0
  double omega_d = 0.0;  // rad/s, sqrt(mu / r_d^3)

  static DesiredOrbit circular(double mu, double r_d);
};

/// Time-varying coordination gain. During acquisition it decays exponentially
/// from kc_bar toward kc_floor; during station-keeping it is held at kc_floor.
/// Always within [kc_floor, kc_bar] and nonincreasing in t.
double kc_schedule(double t, const GainSet& gains, Phase phase);

/// d(k_c)/dt of the schedule above. Nonpositive for all t >= 0.
double kc_schedule_rate(double t, const GainSet& gains, Phase phase);

/// Radial thrust law, newtons. Cancels gravity minus centrifugal exactly and
/// adds specific-force feedback on (v - v_d) and (r - r_d), so the closed-loop
/// radial dynamics are v' = -k_v (v - v_d) - k_r (r - r_d).
double radial_thrust(const SatelliteTruthState& state, const GainSet& gains,
                     const DesiredOrbit& desired, double mu);

/// Tangential thrust law, newtons:
///   tau_theta = m (2 v w - k_omega (w - w_d) + r u_i / k_c),
/// which renders omega' = -(k_omega / r)(w - w_d) + u_i / k_c.
double tangential_thrust(const SatelliteTruthState& state, const GainSet& gains,
                         const DesiredOrbit& desired, double u_i, double k_c);

/// Warn-only mode passes the command through and sets the saturated flag when
/// a component exceeds tau_max; clamp mode limits each component to
/// [-tau_max, tau_max].
ThrustCommand saturate(ThrustCommand cmd, double tau_max, SaturationMode mode);

}  // namespace areosync
