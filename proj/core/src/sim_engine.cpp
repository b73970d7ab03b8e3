#include "areosync/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "areosync/constants.hpp"

namespace areosync {

std::vector<SatelliteTruthState> sample_initial_conditions(
    const InitialConditionSpec& spec, int n_sats, std::uint64_t seed,
    double sat_mass) {
  std::mt19937_64 gen(seed);
  // Top 53 bits -> uniform on [0, 1). std::uniform_real_distribution is
  // implementation-defined; the draws here must reproduce bit-for-bit from
  // (spec, n_sats, seed).
  auto draw = [&gen](const UniformWindow& w) {
    const double u01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return w.nominal + (2.0 * u01 - 1.0) * w.half_width;
  };

  const double spacing = 2.0 * std::numbers::pi / n_sats;
  std::vector<SatelliteTruthState> states;
  states.reserve(n_sats);
  for (int i = 0; i < n_sats; ++i) {
    SatelliteTruthState s;
    s.r = draw(spec.r);
    s.v = draw(spec.v);
    s.omega = draw(spec.omega);
    s.theta = draw(spec.theta);
    if (spec.theta_mode == ThetaMode::kSpaced) {
      s.theta -= i * spacing;
    }
    s.mass = sat_mass;
    states.push_back(s);
  }
  return states;
}

void system_derivative(const Scenario& scenario, const Topology& topo, double t,
                       std::span<const double> x, std::span<double> dxdt,
                       ControlWorkspace& ws) {
  const StateLayout layout{scenario.n_sats, topo.n_links};
  if (x.size() != layout.size() || dxdt.size() != layout.size()) {
    throw std::invalid_argument("system_derivative: state size mismatch");
  }
  const int n = scenario.n_sats;
  const int m = topo.n_links;

  ws.k_c = kc_schedule(t, scenario.gains, scenario.phase_at(t));

  for (int l = 0; l < m; ++l) {
    ws.y[l] = scenario.link_output_fn(x[layout.theta_rel(l)]);
  }
  if (scenario.coordination_enabled) {
    coordination_vector(std::span<const double>(ws.y), topo,
                        std::span<double>(ws.u));
  } else {
    std::fill(ws.u.begin(), ws.u.end(), 0.0);
  }

  for (int i = 0; i < n; ++i) {
    SatelliteTruthState s;
    s.r = x[layout.r(i)];
    s.v = x[layout.v(i)];
    s.omega = x[layout.omega(i)];
    s.theta = x[layout.theta(i)];
    s.mass = scenario.sat_mass;
    ws.omega_scratch[i] = s.omega;

    PerturbationAccel accel;
    if (scenario.moons_enabled) {
      try {
        accel = total_perturbation(s, scenario.moons, t);
      } catch (const SimulationError& e) {
        throw SimulationError("satellite " + std::to_string(i) + " at t = " +
                              std::to_string(t) + " s: " + e.what());
      }
    }
    ws.a_r[i] = accel.a_r;
    ws.a_theta[i] = accel.a_theta;

    ThrustCommand cmd;
    cmd.tau_r = radial_thrust(s, scenario.gains, scenario.desired, scenario.planet.mu);
    cmd.tau_theta =
        tangential_thrust(s, scenario.gains, scenario.desired, ws.u[i], ws.k_c);
    cmd = saturate(cmd, scenario.tau_max, scenario.saturation_mode);
    ws.tau_r[i] = cmd.tau_r;
    ws.tau_theta[i] = cmd.tau_theta;
    ws.saturated[i] = cmd.saturated ? 1 : 0;
    ws.max_abs_tau_r = std::max(ws.max_abs_tau_r, std::abs(cmd.tau_r));
    ws.max_abs_tau_theta = std::max(ws.max_abs_tau_theta, std::abs(cmd.tau_theta));

    StateDerivative d;
    try {
      d = truth_derivatives(s, cmd, accel, scenario.planet.mu);
    } catch (const SimulationError& e) {
      throw SimulationError("satellite " + std::to_string(i) + " at t = " +
                            std::to_string(t) + " s: " + e.what());
    }
    dxdt[layout.r(i)] = d.r_dot;
    dxdt[layout.v(i)] = d.v_dot;
    dxdt[layout.omega(i)] = d.omega_dot;
    dxdt[layout.theta(i)] = d.theta_dot;
  }

  link_inputs(std::span<const double>(ws.omega_scratch), topo,
              std::span<double>(ws.e));
  for (int l = 0; l < m; ++l) {
    dxdt[layout.theta_rel(l)] = ws.e[l];
  }
}

namespace {

void append_row(std::vector<double>& series, std::span<const double> values) {
  series.insert(series.end(), values.begin(), values.end());
}

}  // namespace

RunResult run(const Scenario& scenario) {
  scenario.validate();
  const Topology topo = build_path_incidence(scenario.n_sats);
  const EquilibriumPoint eq =
      compute_equilibrium(scenario.desired, topo, scenario.link_output_fn);
  const StateLayout layout{scenario.n_sats, topo.n_links};
  const int n = scenario.n_sats;
  const int m = topo.n_links;

  const auto initial = sample_initial_conditions(scenario.ic, n, scenario.seed,
                                                 scenario.sat_mass);
  std::vector<double> x(layout.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    x[layout.r(i)] = initial[i].r;
    x[layout.v(i)] = initial[i].v;
    x[layout.omega(i)] = initial[i].omega;
    x[layout.theta(i)] = initial[i].theta;
  }
  // Link states start at the true physical spacing of the sampled angles.
  for (int l = 0; l < m; ++l) {
    x[layout.theta_rel(l)] = initial[l].theta - initial[l + 1].theta;
  }

  const long long log_every = std::llround(scenario.logging_interval / scenario.dt);
  const long long n_rows = std::llround(scenario.horizon / scenario.logging_interval);

  RunResult result;
  TrajectoryLog& log = result.log;
  log.scenario = scenario;
  log.n_sats = static_cast<std::size_t>(n);
  log.n_links = static_cast<std::size_t>(m);
  const std::size_t expected_rows = static_cast<std::size_t>(n_rows) + 1;
  log.t.reserve(expected_rows);
  for (auto* series : {&log.r, &log.v, &log.omega, &log.theta, &log.tau_r,
                       &log.tau_theta, &log.u}) {
    series->reserve(expected_rows * n);
  }
  log.theta_rel.reserve(expected_rows * m);
  log.y.reserve(expected_rows * m);
  for (auto* series : {&log.k_c, &log.V, &log.V_lower, &log.V_upper, &log.V_dot}) {
    series->reserve(expected_rows);
  }

  ControlWorkspace ws(n, m);
  Rk4Workspace rk4_ws(layout.size());
  std::vector<double> deriv_scratch(layout.size(), 0.0);
  auto deriv = [&](double t, std::span<const double> state,
                   std::span<double> dxdt) {
    system_derivative(scenario, topo, t, state, dxdt, ws);
  };

  int saturation_events = 0;
  auto log_row = [&](double t) {
    system_derivative(scenario, topo, t, std::span<const double>(x),
                      std::span<double>(deriv_scratch), ws);
    log.t.push_back(t);
    const std::size_t row = log.rows() - 1;
    for (int i = 0; i < n; ++i) {
      log.r.push_back(x[layout.r(i)]);
      log.v.push_back(x[layout.v(i)]);
      log.omega.push_back(x[layout.omega(i)]);
      log.theta.push_back(x[layout.theta(i)]);
    }
    append_row(log.tau_r, ws.tau_r);
    append_row(log.tau_theta, ws.tau_theta);
    append_row(log.u, ws.u);
    for (int l = 0; l < m; ++l) {
      log.theta_rel.push_back(x[layout.theta_rel(l)]);
    }
    append_row(log.y, ws.y);
    log.k_c.push_back(ws.k_c);

    for (int i = 0; i < n; ++i) {
      if (ws.saturated[i]) ++saturation_events;
    }

    const Phase phase = scenario.phase_at(t);
    const StorageSample storage =
        lyapunov(log.sat_row(log.omega, row), log.link_row(log.theta_rel, row),
                 eq, t, scenario.gains, phase, scenario.link_output_fn);
    log.V.push_back(storage.V);
    log.V_lower.push_back(storage.V_lower);
    log.V_upper.push_back(storage.V_upper);
    log.V_dot.push_back(lyapunov_rate(
        log.sat_row(log.omega, row), log.sat_row(log.r, row), eq, ws.k_c,
        kc_schedule_rate(t, scenario.gains, phase), scenario.gains.k_omega));
  };

  long long step = 0;
  try {
    for (long long row = 0; row <= n_rows; ++row) {
      log_row(static_cast<double>(step) * scenario.dt);
      if (row == n_rows) break;
      for (long long j = 0; j < log_every; ++j) {
        rk4_step(deriv, std::span<double>(x),
                 static_cast<double>(step) * scenario.dt, scenario.dt, rk4_ws);
        ++step;
      }
    }
  } catch (const SimulationError& e) {
    result.status = RunStatus::kAborted;
    result.diagnostic = e.what();
  }

  result.stage_max_abs_tau_r = ws.max_abs_tau_r;
  result.stage_max_abs_tau_theta = ws.max_abs_tau_theta;

  AcquisitionReport& report = result.report;
  report.saturation_events = saturation_events;
  if (log.rows() > 0) {
    const double t_acq = detect_acquisition(log, scenario.acquisition_tol_deg);
    report.acquired = std::isfinite(t_acq) && result.status == RunStatus::kOk;
    if (report.acquired) {
      report.t_acq_s = t_acq;
      report.t_acq_sols = constants::seconds_to_sols(t_acq);
    }

    report.max_abs_tau_r = 0.0;
    report.max_abs_tau_theta = 0.0;
    for (double value : log.tau_r) {
      report.max_abs_tau_r = std::max(report.max_abs_tau_r, std::abs(value));
    }
    for (double value : log.tau_theta) {
      report.max_abs_tau_theta =
          std::max(report.max_abs_tau_theta, std::abs(value));
    }

    const std::size_t last = log.rows() - 1;
    constexpr double kDegPerRad = 180.0 / std::numbers::pi;
    report.final_spacing_err_deg.resize(m);
    for (int l = 0; l < m; ++l) {
      report.final_spacing_err_deg[l] =
          (log.theta_rel[last * m + l] - eq.theta_rel_bar(l)) * kDegPerRad;
    }
    report.final_omega_err.resize(n);
    report.final_max_abs_r_err = 0.0;
    for (int i = 0; i < n; ++i) {
      report.final_omega_err[i] = log.omega[last * n + i] - eq.omega_bar;
      report.final_max_abs_r_err =
          std::max(report.final_max_abs_r_err,
                   std::abs(log.r[last * n + i] - eq.r_bar));
    }

    const double v_tol = 1e-9 * std::max(log.V.front(), 1.0);
    report.lyapunov_monotone = true;
    for (std::size_t k = 0; k + 1 < log.rows(); ++k) {
      if (log.V[k + 1] - log.V[k] > v_tol) {
        report.lyapunov_monotone = false;
        break;
      }
    }
  }
  return result;
}

double detect_acquisition(const TrajectoryLog& log, double tol_deg) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  if (log.rows() == 0) return kNaN;

  const Topology topo = build_path_incidence(log.scenario.n_sats);
  const EquilibriumPoint eq = compute_equilibrium(
      log.scenario.desired, topo, log.scenario.link_output_fn);
  const std::size_t m = log.n_links;
  constexpr double kDegPerRad = 180.0 / std::numbers::pi;

  std::ptrdiff_t last_bad = -1;
  for (std::size_t row = 0; row < log.rows(); ++row) {
    for (std::size_t l = 0; l < m; ++l) {
      const double err_deg =
          std::abs(log.theta_rel[row * m + l] - eq.theta_rel_bar(l)) * kDegPerRad;
      if (err_deg > tol_deg) {
        last_bad = static_cast<std::ptrdiff_t>(row);
        break;
      }
    }
  }
  if (last_bad < 0) return log.t.front();
  if (last_bad + 1 >= static_cast<std::ptrdiff_t>(log.rows())) return kNaN;
  return log.t[static_cast<std::size_t>(last_bad + 1)];
}

}  // namespace areosync
