#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "areosync/scenario.hpp"

namespace areosync {

/// Uniformly sampled run history. Per-satellite series are flattened row-major
/// (value at row k, satellite i sits at [k * n_sats + i]); per-link series
/// likewise with n_links.
struct TrajectoryLog {
  Scenario scenario;  // the run is a pure function of this
  std::size_t n_sats = 0;
  std::size_t n_links = 0;

  std::vector<double> t;  // s, uniform grid at logging_interval

  // rows x n_sats
  std::vector<double> r, v, omega, theta, tau_r, tau_theta, u;
  // rows x n_links
  std::vector<double> theta_rel, y;
  // per row
  std::vector<double> k_c, V, V_lower, V_upper, V_dot;

  std::size_t rows() const { return t.size(); }

  std::span<const double> sat_row(const std::vector<double>& series,
                                  std::size_t row) const {
    return {series.data() + row * n_sats, n_sats};
  }
  std::span<const double> link_row(const std::vector<double>& series,
                                   std::size_t row) const {
    return {series.data() + row * n_links, n_links};
  }
};

/// Headline metrics of one run. Thrust maxima and saturation events are
/// accounted over logged samples, so every report value can be recomputed
/// from the trajectory files.
struct AcquisitionReport {
  bool acquired = false;
  double t_acq_s = std::numeric_limits<double>::quiet_NaN();
  double t_acq_sols = std::numeric_limits<double>::quiet_NaN();
  double max_abs_tau_r = 0.0;      // N
  double max_abs_tau_theta = 0.0;  // N
  std::vector<double> final_spacing_err_deg;  // per link
  std::vector<double> final_omega_err;        // rad/s, per satellite
  double final_max_abs_r_err = 0.0;           // m
  bool lyapunov_monotone = false;
  int saturation_events = 0;
};

}  // namespace areosync
