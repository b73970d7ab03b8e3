#include "areosync/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace areosync {

void GainSet::validate() const {
  if (!(k_r > 0.0)) throw std::invalid_argument("GainSet: k_r must be positive");
  if (!(k_v > 0.0)) throw std::invalid_argument("GainSet: k_v must be positive");
  if (!(k_omega > 0.0)) throw std::invalid_argument("GainSet: k_omega must be positive");
  if (!(kc_floor > 0.0)) throw std::invalid_argument("GainSet: kc_floor must be positive");
  if (!(kc_bar > kc_floor)) throw std::invalid_argument("GainSet: kc_bar must exceed kc_floor");
  if (!(c > 0.0)) throw std::invalid_argument("GainSet: c must be positive");
  if (!(t_f > 0.0)) throw std::invalid_argument("GainSet: t_f must be positive");
}

DesiredOrbit DesiredOrbit::circular(double mu, double r_d) {
  if (!(mu > 0.0) || !(r_d > 0.0)) {
    throw std::invalid_argument("DesiredOrbit: mu and r_d must be positive");
  }
  DesiredOrbit d;
  d.r_d = r_d;
  d.v_d = 0.0;
  d.omega_d = std::sqrt(mu / (r_d * r_d * r_d));
  return d;
}

double kc_schedule(double t, const GainSet& gains, Phase phase) {
  if (phase == Phase::kStationKeeping) {
    return gains.kc_floor;
  }
  return (gains.kc_bar - gains.kc_floor) * std::exp(-gains.c * t / gains.t_f) +
         gains.kc_floor;
}

double kc_schedule_rate(double t, const GainSet& gains, Phase phase) {
  if (phase == Phase::kStationKeeping) {
    return 0.0;
  }
  return -(gains.c / gains.t_f) * (gains.kc_bar - gains.kc_floor) *
         std::exp(-gains.c * t / gains.t_f);
}

double radial_thrust(const SatelliteTruthState& state, const GainSet& gains,
                     const DesiredOrbit& desired, double mu) {
  const double feedforward = radial_imbalance(mu, state.r, state.omega);
  const double feedback =
      -gains.k_v * (state.v - desired.v_d) - gains.k_r * (state.r - desired.r_d);
  return state.mass * (feedforward + feedback);
}

double tangential_thrust(const SatelliteTruthState& state, const GainSet& gains,
                         const DesiredOrbit& desired, double u_i, double k_c) {
  return state.mass * (2.0 * state.v * state.omega -
                       gains.k_omega * (state.omega - desired.omega_d) +
                       state.r * u_i / k_c);
}

ThrustCommand saturate(ThrustCommand cmd, double tau_max, SaturationMode mode) {
  const bool over_r = std::abs(cmd.tau_r) > tau_max;
  const bool over_theta = std::abs(cmd.tau_theta) > tau_max;
  cmd.saturated = over_r || over_theta;
  if (mode == SaturationMode::kClamp) {
    if (over_r) cmd.tau_r = std::copysign(tau_max, cmd.tau_r);
    if (over_theta) cmd.tau_theta = std::copysign(tau_max, cmd.tau_theta);
  }
  return cmd;
}

}  // namespace areosync
