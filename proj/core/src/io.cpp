#include "areosync/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace areosync {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// theta is unwrapped internally (it grows monotonically); files carry the
// display form on [0, 2*pi). Relative angles stay unwrapped: their storage
// integral lives on the real line.
double wrap_angle(double theta) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double wrapped = std::fmod(theta, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  return wrapped;
}

// Write-to-temp then rename, so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + temp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    throw std::runtime_error("rename failed for " + target.string() + ": " +
                             ec.message());
  }
}

ordered_json json_or_null(double value, bool present) {
  if (!present) return nullptr;
  return value;
}

}  // namespace

void write_trajectory(const TrajectoryLog& log, const std::string& sat_csv_path,
                      const std::string& links_csv_path) {
  const std::size_t n = log.n_sats;
  const std::size_t m = log.n_links;

  std::string sats =
      "t_s,sat_id,r_m,v_mps,omega_radps,theta_rad,tau_r_N,tau_theta_N,u_i\n";
  for (std::size_t row = 0; row < log.rows(); ++row) {
    const std::string t = format_double(log.t[row]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = row * n + i;
      sats += t;
      sats += ',';
      sats += std::to_string(i);
      sats += ',';
      sats += format_double(log.r[k]);
      sats += ',';
      sats += format_double(log.v[k]);
      sats += ',';
      sats += format_double(log.omega[k]);
      sats += ',';
      sats += format_double(wrap_angle(log.theta[k]));
      sats += ',';
      sats += format_double(log.tau_r[k]);
      sats += ',';
      sats += format_double(log.tau_theta[k]);
      sats += ',';
      sats += format_double(log.u[k]);
      sats += '\n';
    }
  }
  write_atomic(sat_csv_path, sats);

  std::string links = "t_s,link_id,theta_rel_rad,y_l\n";
  for (std::size_t row = 0; row < log.rows(); ++row) {
    const std::string t = format_double(log.t[row]);
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t k = row * m + l;
      links += t;
      links += ',';
      links += std::to_string(l);
      links += ',';
      links += format_double(log.theta_rel[k]);
      links += ',';
      links += format_double(log.y[k]);
      links += '\n';
    }
  }
  write_atomic(links_csv_path, links);
}

void write_report(const AcquisitionReport& report, const std::string& path) {
  ordered_json doc;
  doc["t_acq_sols"] = json_or_null(report.t_acq_sols, report.acquired);
  doc["t_acq_s"] = json_or_null(report.t_acq_s, report.acquired);
  doc["acquired"] = report.acquired;
  doc["max_abs_tau_r_N"] = report.max_abs_tau_r;
  doc["max_abs_tau_theta_N"] = report.max_abs_tau_theta;
  doc["final_spacing_err_deg"] = report.final_spacing_err_deg;
  doc["final_omega_err_radps"] = report.final_omega_err;
  doc["lyapunov_monotone"] = report.lyapunov_monotone;
  doc["saturation_events"] = report.saturation_events;
  write_atomic(path, doc.dump(2) + "\n");
}

void write_certification(const CertificationReport& report,
                         const std::string& path) {
  ordered_json doc;
  doc["total_violations"] = report.total_violations;
  doc["fd_step_s"] = report.fd_step;
  doc["coarse_sampling"] = report.coarse_sampling;
  doc["v_series_csv"] = report.v_series_ref;
  ordered_json subsystems = ordered_json::array();
  for (const SubsystemCertification& cert : report.subsystems) {
    subsystems.push_back({{"id", cert.id},
                          {"violations", cert.violations},
                          {"worst_slack", cert.worst_slack},
                          {"tolerance", cert.tolerance},
                          {"eps_min", cert.eps_min},
                          {"eps_mean", cert.eps_mean},
                          {"eps_max", cert.eps_max}});
  }
  doc["subsystems"] = subsystems;
  write_atomic(path, doc.dump(2) + "\n");
}

void write_plot_data(const TrajectoryLog& log, int stride, const std::string& path) {
  if (stride < 1) {
    throw std::invalid_argument("write_plot_data: stride must be >= 1");
  }
  const std::size_t n = log.n_sats;
  const std::size_t m = log.n_links;

  std::string out = "t_s,k_c,V,V_lower,V_upper,V_dot";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string suffix = "_" + std::to_string(i);
    out += ",r_m" + suffix + ",v_mps" + suffix + ",omega_radps" + suffix +
           ",theta_rad" + suffix + ",tau_r_N" + suffix + ",tau_theta_N" + suffix +
           ",u" + suffix;
  }
  for (std::size_t l = 0; l < m; ++l) {
    const std::string suffix = "_" + std::to_string(l);
    out += ",theta_rel_rad" + suffix + ",y" + suffix;
  }
  out += '\n';

  for (std::size_t row = 0; row < log.rows(); row += static_cast<std::size_t>(stride)) {
    out += format_double(log.t[row]);
    out += ',';
    out += format_double(log.k_c[row]);
    out += ',';
    out += format_double(log.V[row]);
    out += ',';
    out += format_double(log.V_lower[row]);
    out += ',';
    out += format_double(log.V_upper[row]);
    out += ',';
    out += format_double(log.V_dot[row]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = row * n + i;
      out += ',';
      out += format_double(log.r[k]);
      out += ',';
      out += format_double(log.v[k]);
      out += ',';
      out += format_double(log.omega[k]);
      out += ',';
      out += format_double(wrap_angle(log.theta[k]));
      out += ',';
      out += format_double(log.tau_r[k]);
      out += ',';
      out += format_double(log.tau_theta[k]);
      out += ',';
      out += format_double(log.u[k]);
    }
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t k = row * m + l;
      out += ',';
      out += format_double(log.theta_rel[k]);
      out += ',';
      out += format_double(log.y[k]);
    }
    out += '\n';
  }
  write_atomic(path, out);
}

}  // namespace areosync
