#include "areosync/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "areosync/errors.hpp"

namespace areosync {

namespace {

// Weighted deviation sum (w - w_bar)^T R^-1 (w - w_bar). Shared by
// lyapunov_rate and barbalat_w so both sides of the envelope inequality are
// built from identical partial sums.
double deviation_sum_over_r(std::span<const double> omega,
                            std::span<const double> r, double omega_bar) {
  double sum = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double d = omega[i] - omega_bar;
    sum += d * d / r[i];
  }
  return sum;
}

double deviation_sum(std::span<const double> omega, double omega_bar) {
  double sum = 0.0;
  for (double w : omega) {
    const double d = w - omega_bar;
    sum += d * d;
  }
  return sum;
}

}  // namespace

double find_link_equilibrium(const LinkOutputFn& h, double lo, double hi,
                             double tol) {
  if (!(lo < hi)) std::swap(lo, hi);
  double f_lo = h(lo);
  double f_hi = h(hi);

  // Expand the bracket until it straddles zero; h is onto, so this terminates
  // for any admissible map.
  double width = hi - lo;
  int expansions = 0;
  while (f_lo > 0.0 || f_hi < 0.0) {
    if (++expansions > 200) {
      throw SimulationError(
          "find_link_equilibrium: failed to bracket a root; link output map "
          "does not look strictly increasing and onto");
    }
    width *= 2.0;
    if (f_lo > 0.0) {
      lo -= width;
      f_lo = h(lo);
    }
    if (f_hi < 0.0) {
      hi += width;
      f_hi = h(hi);
    }
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  for (int it = 0; it < 400 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = h(mid);
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EquilibriumPoint compute_equilibrium(const DesiredOrbit& desired,
                                     const Topology& topo, const LinkOutputFn& h,
                                     double tol) {
  EquilibriumPoint eq;
  eq.r_bar = desired.r_d;
  eq.v_bar = 0.0;
  eq.omega_bar = desired.omega_d;
  eq.theta_rel_bar.resize(topo.n_links);
  for (int l = 0; l < topo.n_links; ++l) {
    eq.theta_rel_bar(l) = h.affine()
                              ? h.theta_rel_d
                              : find_link_equilibrium(h, h.theta_rel_d - 1.0,
                                                      h.theta_rel_d + 1.0, tol);
  }
  return eq;
}

double satellite_storage(double omega_i, double omega_bar, double k_c_t) {
  const double d = omega_i - omega_bar;
  return 0.5 * k_c_t * d * d;
}

double link_storage(double theta_rel, double theta_rel_bar, const LinkOutputFn& h,
                    double quad_tol) {
  if (h.affine()) {
    const double d = theta_rel - theta_rel_bar;
    return 0.5 * d * d;
  }
  if (theta_rel == theta_rel_bar) return 0.0;

  const double y_bar = h(theta_rel_bar);
  const auto integrand = [&](double z) { return h(z) - y_bar; };
  const double lo = std::min(theta_rel_bar, theta_rel);
  const double hi = std::max(theta_rel_bar, theta_rel);

  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, lo, hi, 15, quad_tol, &error);
  if (!std::isfinite(value) || error > quad_tol * std::max(1.0, std::abs(value))) {
    throw SimulationError("link_storage: quadrature failed to reach tolerance");
  }
  return theta_rel >= theta_rel_bar ? value : -value;
}

StorageSample lyapunov(std::span<const double> omega,
                       std::span<const double> theta_rel,
                       const EquilibriumPoint& eq, double t, const GainSet& gains,
                       Phase phase, const LinkOutputFn& h) {
  const double k_c = kc_schedule(t, gains, phase);

  StorageSample sample;
  sample.t = t;
  sample.S.reserve(omega.size());
  sample.T.reserve(theta_rel.size());

  double v = 0.0, v_lo = 0.0, v_hi = 0.0;
  for (double w : omega) {
    const double s = satellite_storage(w, eq.omega_bar, k_c);
    sample.S.push_back(s);
    v += s;
    v_lo += satellite_storage(w, eq.omega_bar, gains.kc_floor);
    v_hi += satellite_storage(w, eq.omega_bar, gains.kc_bar);
  }
  for (std::size_t l = 0; l < theta_rel.size(); ++l) {
    const double tl = link_storage(theta_rel[l], eq.theta_rel_bar(l), h);
    sample.T.push_back(tl);
    v += tl;
    v_lo += tl;
    v_hi += tl;
  }
  sample.V = v;
  sample.V_lower = v_lo;
  sample.V_upper = v_hi;
  return sample;
}

double lyapunov_rate(std::span<const double> omega, std::span<const double> r,
                     const EquilibriumPoint& eq, double k_c, double k_c_dot,
                     double k_omega) {
  const double weighted = deviation_sum_over_r(omega, r, eq.omega_bar);
  const double plain = deviation_sum(omega, eq.omega_bar);
  return -k_c * k_omega * weighted + 0.5 * k_c_dot * plain;
}

double barbalat_w(std::span<const double> omega, std::span<const double> r,
                  const EquilibriumPoint& eq, double kc_floor, double k_omega) {
  return -kc_floor * k_omega * deviation_sum_over_r(omega, r, eq.omega_bar);
}

std::vector<PassivityResidual> certify_passivity(const TrajectoryLog& log,
                                                 const EquilibriumPoint& eq) {
  const std::size_t rows = log.rows();
  if (rows < 3) {
    throw ValidationError({"certify_passivity: need at least 3 logged rows"});
  }
  const std::size_t n = log.n_sats;
  const std::size_t m = log.n_links;
  const double h_step = log.t[1] - log.t[0];
  const GainSet& gains = log.scenario.gains;
  const LinkOutputFn& h_fn = log.scenario.link_output_fn;
  const Topology topo = build_path_incidence(static_cast<int>(n));

  std::vector<PassivityResidual> out;
  out.reserve((rows - 2) * (n + m));

  auto sat_storage_at = [&](std::size_t row, std::size_t i) {
    return satellite_storage(log.omega[row * n + i], eq.omega_bar, log.k_c[row]);
  };
  auto link_storage_at = [&](std::size_t row, std::size_t l) {
    return link_storage(log.theta_rel[row * m + l], eq.theta_rel_bar(l), h_fn);
  };

  for (std::size_t k = 1; k + 1 < rows; ++k) {
    const double t = log.t[k];
    const double kc_dot = kc_schedule_rate(t, gains, log.scenario.phase_at(t));

    for (std::size_t i = 0; i < n; ++i) {
      const double d_omega = log.omega[k * n + i] - eq.omega_bar;
      const double eps =
          log.k_c[k] * gains.k_omega / log.r[k * n + i] - 0.5 * kc_dot;
      PassivityResidual res;
      res.kind = PassivityResidual::Kind::kSatellite;
      res.subsystem = static_cast<int>(i);
      res.t = t;
      res.epsilon_used = eps;
      res.supply = log.u[k * n + i] * d_omega - eps * d_omega * d_omega;
      res.storage_rate =
          (sat_storage_at(k + 1, i) - sat_storage_at(k - 1, i)) / (2.0 * h_step);
      res.slack = res.supply - res.storage_rate;
      out.push_back(res);
    }

    for (std::size_t l = 0; l < m; ++l) {
      const auto [pos, neg] = topo.link_ends[l];
      const double e_l = log.omega[k * n + pos] - log.omega[k * n + neg];
      const double y_bar = h_fn(eq.theta_rel_bar(l));
      PassivityResidual res;
      res.kind = PassivityResidual::Kind::kLink;
      res.subsystem = static_cast<int>(l);
      res.t = t;
      res.epsilon_used = 0.0;
      res.supply = e_l * (log.y[k * m + l] - y_bar);
      res.storage_rate =
          (link_storage_at(k + 1, l) - link_storage_at(k - 1, l)) / (2.0 * h_step);
      res.slack = res.supply - res.storage_rate;
      out.push_back(res);
    }
  }
  return out;
}

CertificationReport certify(const TrajectoryLog& log, const EquilibriumPoint& eq) {
  const std::size_t rows = log.rows();
  if (rows < 5) {
    throw ValidationError(
        {"certify: need at least 5 logged rows to model the finite-difference "
         "error"});
  }
  const std::size_t n = log.n_sats;
  const std::size_t m = log.n_links;
  const double h_step = log.t[1] - log.t[0];
  const std::vector<PassivityResidual> residuals = certify_passivity(log, eq);

  CertificationReport report;
  report.fd_step = h_step;
  // The certificate checks a continuous-time inequality with discrete data;
  // above ~60 s the O(h^2) error model is no longer trustworthy, so widen.
  report.coarse_sampling = h_step > 60.0;
  const double widen = report.coarse_sampling ? 10.0 : 1.0;
  constexpr double kSafety = 2.0;

  const std::size_t n_subsystems = n + m;
  auto subsystem_index = [&](const PassivityResidual& r) {
    return r.kind == PassivityResidual::Kind::kSatellite
               ? static_cast<std::size_t>(r.subsystem)
               : n + static_cast<std::size_t>(r.subsystem);
  };

  // Storage series per subsystem, for the third-difference curvature estimate
  // and the roundoff floor.
  std::vector<std::vector<double>> storage(n_subsystems,
                                           std::vector<double>(rows, 0.0));
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      storage[i][k] =
          satellite_storage(log.omega[k * n + i], eq.omega_bar, log.k_c[k]);
    }
    for (std::size_t l = 0; l < m; ++l) {
      storage[n + l][k] = link_storage(log.theta_rel[k * m + l],
                                       eq.theta_rel_bar(l), log.scenario.link_output_fn);
    }
  }

  std::vector<double> tolerance(n_subsystems, 0.0);
  for (std::size_t s = 0; s < n_subsystems; ++s) {
    const std::vector<double>& S = storage[s];
    double max_d3 = 0.0;
    for (std::size_t k = 2; k + 2 < rows; ++k) {
      const double d3 = (S[k + 2] - 2.0 * S[k + 1] + 2.0 * S[k - 1] - S[k - 2]) /
                        (2.0 * h_step * h_step * h_step);
      max_d3 = std::max(max_d3, std::abs(d3));
    }
    const double max_abs_s =
        *std::max_element(S.begin(), S.end(),
                          [](double a, double b) { return std::abs(a) < std::abs(b); });
    const double truncation = kSafety * (max_d3 / 6.0) * h_step * h_step;
    const double floor = 32.0 * DBL_EPSILON * (std::abs(max_abs_s) / h_step);
    tolerance[s] = widen * (truncation + floor);
  }

  report.subsystems.resize(n_subsystems);
  std::vector<double> eps_sum(n_subsystems, 0.0);
  std::vector<int> counts(n_subsystems, 0);
  for (std::size_t s = 0; s < n_subsystems; ++s) {
    SubsystemCertification& cert = report.subsystems[s];
    cert.id = s < n ? "satellite-" + std::to_string(s)
                    : "link-" + std::to_string(s - n);
    cert.tolerance = tolerance[s];
    cert.worst_slack = std::numeric_limits<double>::infinity();
    cert.eps_min = std::numeric_limits<double>::infinity();
    cert.eps_max = -std::numeric_limits<double>::infinity();
  }

  for (const PassivityResidual& r : residuals) {
    const std::size_t s = subsystem_index(r);
    SubsystemCertification& cert = report.subsystems[s];
    cert.worst_slack = std::min(cert.worst_slack, r.slack);
    if (r.slack < -tolerance[s]) {
      ++cert.violations;
      ++report.total_violations;
    }
    if (r.kind == PassivityResidual::Kind::kSatellite) {
      cert.eps_min = std::min(cert.eps_min, r.epsilon_used);
      cert.eps_max = std::max(cert.eps_max, r.epsilon_used);
      eps_sum[s] += r.epsilon_used;
    }
    ++counts[s];
  }
  for (std::size_t s = 0; s < n_subsystems; ++s) {
    SubsystemCertification& cert = report.subsystems[s];
    if (s < n && counts[s] > 0) {
      cert.eps_mean = eps_sum[s] / counts[s];
    } else {
      cert.eps_min = cert.eps_mean = cert.eps_max = 0.0;
    }
    if (!std::isfinite(cert.worst_slack)) cert.worst_slack = 0.0;
  }
  return report;
}

RadialEigenCheck radial_eigen_check(double k_r, double k_v) {
  RadialEigenCheck check;
  const std::complex<double> disc(k_v * k_v - 4.0 * k_r, 0.0);
  const std::complex<double> root = std::sqrt(disc);
  check.s1 = 0.5 * (-k_v + root);
  check.s2 = 0.5 * (-k_v - root);
  check.stable = check.s1.real() < 0.0 && check.s2.real() < 0.0;
  return check;
}

}  // namespace areosync
