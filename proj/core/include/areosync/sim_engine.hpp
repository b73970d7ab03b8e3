#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "areosync/analysis.hpp"
#include "areosync/errors.hpp"
#include "areosync/scenario.hpp"
#include "areosync/trajectory.hpp"

namespace areosync {

/// Draws one state per satellite, each component independent and uniform on
/// its window, in a fixed order (r, v, omega, theta per satellite). The
/// generator is seed-reproducible bit-for-bit; identical (spec, n_sats, seed)
/// give identical states.
std::vector<SatelliteTruthState> sample_initial_conditions(
    const InitialConditionSpec& spec, int n_sats, std::uint64_t seed,
    double sat_mass);

/// Packed state vector: [r_i, v_i, omega_i, theta_i] per satellite, then
/// theta_rel per link.
struct StateLayout {
  int n_sats = 0;
  int n_links = 0;

  std::size_t size() const {
    return 4u * static_cast<std::size_t>(n_sats) + static_cast<std::size_t>(n_links);
  }
  std::size_t r(int i) const { return 4u * static_cast<std::size_t>(i); }
  std::size_t v(int i) const { return 4u * static_cast<std::size_t>(i) + 1; }
  std::size_t omega(int i) const { return 4u * static_cast<std::size_t>(i) + 2; }
  std::size_t theta(int i) const { return 4u * static_cast<std::size_t>(i) + 3; }
  std::size_t theta_rel(int l) const {
    return 4u * static_cast<std::size_t>(n_sats) + static_cast<std::size_t>(l);
  }
};

/// Scratch for one control-pipeline evaluation plus running stage-level
/// thrust diagnostics. The integrator and the logger share one instance so the
/// logged controls are exactly the applied ones.
struct ControlWorkspace {
  ControlWorkspace(int n_sats, int n_links)
      : a_r(n_sats, 0.0),
        a_theta(n_sats, 0.0),
        omega_scratch(n_sats, 0.0),
        tau_r(n_sats, 0.0),
        tau_theta(n_sats, 0.0),
        u(n_sats, 0.0),
        saturated(n_sats, 0),
        y(n_links, 0.0),
        e(n_links, 0.0) {}

  std::vector<double> a_r, a_theta;      // moon perturbations per satellite
  std::vector<double> omega_scratch;     // contiguous omega view of the state
  std::vector<double> tau_r, tau_theta;  // emitted thrust per satellite, N
  std::vector<double> u;                 // coordination inputs
  std::vector<char> saturated;
  std::vector<double> y, e;              // link outputs / inputs
  double k_c = 0.0;

  // Maxima across every derivative evaluation, including integrator stages.
  double max_abs_tau_r = 0.0;
  double max_abs_tau_theta = 0.0;
};

/// Coupled derivative of the full constellation at (t, x): moon perturbations,
/// link outputs, coordination mapping, gain schedule, thrust laws, then the
/// truth dynamics and link integrators. One consistent evaluation per call;
/// nothing is carried over between integrator stages.
void system_derivative(const Scenario& scenario, const Topology& topo, double t,
                       std::span<const double> x, std::span<double> dxdt,
                       ControlWorkspace& ws);

/// Stage scratch plus the running compensation of the state accumulator. The
/// compensation makes the per-step state update exact to the increment's ulp
/// instead of the state's: a raw `x += dx` at areostationary radius rounds to
/// ~4e-9 m every step, which random-walks to micrometers over 1e6 steps. The
/// carry belongs to one trajectory; use a fresh workspace (or reset()) when
/// starting another.
struct Rk4Workspace {
  explicit Rk4Workspace(std::size_t n)
      : k1(n), k2(n), k3(n), k4(n), xtmp(n), carry(n, 0.0) {}
  void reset() { std::fill(carry.begin(), carry.end(), 0.0); }
  std::vector<double> k1, k2, k3, k4, xtmp;
  std::vector<double> carry;
};

namespace detail {

inline void check_stage_finite(std::span<const double> k, int stage, double t) {
  double sum = 0.0;
  for (double value : k) sum += value;
  if (std::isfinite(sum)) return;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) {
      throw SimulationError("rk4_step: non-finite derivative component " +
                            std::to_string(i) + " at stage " +
                            std::to_string(stage) + ", t = " + std::to_string(t));
    }
  }
  throw SimulationError("rk4_step: non-finite derivative at stage " +
                        std::to_string(stage) + ", t = " + std::to_string(t));
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta step, in place. f has signature
/// f(t, x, dxdt). Throws SimulationError naming the stage if a stage
/// derivative is non-finite.
template <typename F>
void rk4_step(F&& f, std::span<double> x, double t, double dt,
              Rk4Workspace& ws) {
  const std::size_t n = x.size();
  if (ws.k1.size() != n) {
    throw std::invalid_argument("rk4_step: workspace size mismatch");
  }
  const std::span<const double> xc(x.data(), n);
  const double half = 0.5 * dt;

  f(t, xc, std::span<double>(ws.k1));
  detail::check_stage_finite(ws.k1, 1, t);
  for (std::size_t i = 0; i < n; ++i) ws.xtmp[i] = x[i] + half * ws.k1[i];

  f(t + half, std::span<const double>(ws.xtmp), std::span<double>(ws.k2));
  detail::check_stage_finite(ws.k2, 2, t);
  for (std::size_t i = 0; i < n; ++i) ws.xtmp[i] = x[i] + half * ws.k2[i];

  f(t + half, std::span<const double>(ws.xtmp), std::span<double>(ws.k3));
  detail::check_stage_finite(ws.k3, 3, t);
  for (std::size_t i = 0; i < n; ++i) ws.xtmp[i] = x[i] + dt * ws.k3[i];

  f(t + dt, std::span<const double>(ws.xtmp), std::span<double>(ws.k4));
  detail::check_stage_finite(ws.k4, 4, t);

  // Neumaier-compensated accumulation of the weighted stage sum.
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double increment =
        w * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]) + ws.carry[i];
    const double updated = x[i] + increment;
    ws.carry[i] = std::abs(x[i]) >= std::abs(increment)
                      ? (x[i] - updated) + increment
                      : (increment - updated) + x[i];
    x[i] = updated;
  }
}

enum class RunStatus { kOk, kAborted };

struct RunResult {
  TrajectoryLog log;
  AcquisitionReport report;
  RunStatus status = RunStatus::kOk;
  std::string diagnostic;  // abort reason, empty on success
  // Thrust maxima across every integrator-stage evaluation (the report's
  // maxima cover logged samples only, so they stay recomputable from files).
  double stage_max_abs_tau_r = 0.0;
  double stage_max_abs_tau_theta = 0.0;
};

/// Integrates the scenario from t = 0. The horizon is snapped to the nearest
/// multiple of the logging interval so the log stays on a uniform grid. On
/// instability (r <= 0, non-finite state) the run aborts cleanly, keeping the
/// partial log and a diagnostic.
RunResult run(const Scenario& scenario);

/// Earliest logged time from which every spacing stays within tol_deg of its
/// equilibrium value through the end of the log (enter-and-stay). NaN when the
/// spacings never settle.
double detect_acquisition(const TrajectoryLog& log, double tol_deg = 0.5);

}  // namespace areosync
