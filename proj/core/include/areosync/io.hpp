#pragma once

#include <string>

#include "areosync/analysis.hpp"
#include "areosync/config.hpp"
#include "areosync/trajectory.hpp"

namespace areosync {

/// Satellite rows (t_s, sat_id, r_m, v_mps, omega_radps, theta_rad, tau_r_N,
/// tau_theta_N, u_i) to sat_csv_path and link rows (t_s, link_id,
/// theta_rel_rad, y_l) to links_csv_path. Numbers carry 17 significant digits
/// so a parse-back reproduces the logged doubles exactly; LF line endings.
/// Files are written atomically (temp + rename).
void write_trajectory(const TrajectoryLog& log, const std::string& sat_csv_path,
                      const std::string& links_csv_path);

/// Mission report with a fixed key set: t_acq_sols, t_acq_s, acquired,
/// max_abs_tau_r_N, max_abs_tau_theta_N, final_spacing_err_deg,
/// final_omega_err_radps, lyapunov_monotone, saturation_events. t_acq fields
/// are null when not acquired.
void write_report(const AcquisitionReport& report, const std::string& path);

/// Passivity certificate: per-subsystem violation counts, worst slack,
/// tolerances, output-strict coefficient statistics, and a reference to the
/// series file backing the certificate.
void write_certification(const CertificationReport& report, const std::string& path);

/// Downsampled wide-format series for plotting: one row per kept sample with
/// t, k_c, the storage function and its rate, then per-satellite and per-link
/// columns. stride = 1 keeps every logged row.
void write_plot_data(const TrajectoryLog& log, int stride, const std::string& path);

}  // namespace areosync
