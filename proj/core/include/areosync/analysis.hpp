#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "areosync/controller.hpp"
#include "areosync/network.hpp"
#include "areosync/trajectory.hpp"

namespace areosync {

/// Unique closed-loop equilibrium of the constellation: common desired orbit
/// for every satellite and the spacing at which every link output vanishes.
struct EquilibriumPoint {
  double r_bar = 0.0;      // m, = r_d
  double v_bar = 0.0;      // m/s, = 0
  double omega_bar = 0.0;  // rad/s, = omega_d
  Eigen::VectorXd theta_rel_bar;  // rad, per link
};

/// Root of h on the real line. Expands [lo, hi] until it brackets a sign
/// change, then bisects to tol. Non-convergence signals that h violates the
/// strictly-increasing/onto assumptions and throws SimulationError.
double find_link_equilibrium(const LinkOutputFn& h, double lo, double hi,
                             double tol = 1e-12);

/// For the affine output map the spacing root is theta_rel_d exactly; general
/// maps go through the bracketing bisection.
EquilibriumPoint compute_equilibrium(const DesiredOrbit& desired,
                                     const Topology& topo, const LinkOutputFn& h,
                                     double tol = 1e-12);

/// Satellite storage: k_c(t)/2 * (omega - omega_bar)^2.
double satellite_storage(double omega_i, double omega_bar, double k_c_t);

/// Link storage: integral of h(z) - h(theta_rel_bar) from theta_rel_bar to
/// theta_rel. Closed form (theta_rel - theta_rel_bar)^2 / 2 for the affine
/// map; adaptive Gauss-Kronrod quadrature otherwise. Positive definite about
/// theta_rel_bar because h is strictly increasing.
double link_storage(double theta_rel, double theta_rel_bar, const LinkOutputFn& h,
                    double quad_tol = 1e-12);

/// Storage decomposition of the candidate Lyapunov function at one sample.
struct StorageSample {
  double t = 0.0;
  std::vector<double> S;  // per satellite
  std::vector<double> T;  // per link
  double V = 0.0;         // sum(S) + sum(T)
  double V_lower = 0.0;   // same with k_c replaced by kc_floor
  double V_upper = 0.0;   // same with k_c replaced by kc_bar
};

StorageSample lyapunov(std::span<const double> omega,
                       std::span<const double> theta_rel,
                       const EquilibriumPoint& eq, double t, const GainSet& gains,
                       Phase phase, const LinkOutputFn& h);

/// Closed-form rate of the summed storage along the design model:
///   V' = -k_c k_omega (w - w_bar)^T R^-1 (w - w_bar)
///        + (k_c'/2) (w - w_bar)^T (w - w_bar),
/// nonpositive whenever k_c' <= 0.
double lyapunov_rate(std::span<const double> omega, std::span<const double> r,
                     const EquilibriumPoint& eq, double k_c, double k_c_dot,
                     double k_omega);

/// Negative semidefinite envelope used by the convergence monitor:
///   W = -kc_floor k_omega (w - w_bar)^T R^-1 (w - w_bar).
/// lyapunov_rate <= W holds whenever k_c >= kc_floor and k_c' <= 0.
double barbalat_w(std::span<const double> omega, std::span<const double> r,
                  const EquilibriumPoint& eq, double kc_floor, double k_omega);

/// One supply-rate-vs-storage-rate sample for one subsystem. slack >= -tol is
/// the dissipation certificate; the tolerance covers the centered-difference
/// truncation error.
struct PassivityResidual {
  enum class Kind { kSatellite, kLink };
  Kind kind = Kind::kSatellite;
  int subsystem = 0;
  double t = 0.0;
  double supply = 0.0;        // supply-rate value at the sample
  double storage_rate = 0.0;  // centered finite difference of the storage
  double slack = 0.0;         // supply - storage_rate
  double epsilon_used = 0.0;  // output-strict coefficient (satellites; 0 for links)
};

/// Per-step residuals for every satellite (output-strict supply with
/// epsilon_i(t) = k_c k_omega / r_i - k_c'/2) and every link (pure passivity
/// supply (e - e_bar)(y - y_bar)). Interior samples only; requires at least
/// three logged rows.
std::vector<PassivityResidual> certify_passivity(const TrajectoryLog& log,
                                                 const EquilibriumPoint& eq);

struct SubsystemCertification {
  std::string id;
  int violations = 0;
  double worst_slack = 0.0;  // most negative slack observed
  double tolerance = 0.0;    // violation means slack < -tolerance
  // Output-strict coefficient statistics (satellites only; zero for links).
  double eps_min = 0.0, eps_mean = 0.0, eps_max = 0.0;
};

struct CertificationReport {
  std::vector<SubsystemCertification> subsystems;
  int total_violations = 0;
  double fd_step = 0.0;          // finite-difference step = logging interval, s
  bool coarse_sampling = false;  // step above the recommended bound; tol widened
  std::string v_series_ref;      // path of the series backing the certificate
};

/// Residuals plus per-subsystem tolerances C * h^2, with C estimated from the
/// third difference of each storage series along the trajectory.
CertificationReport certify(const TrajectoryLog& log, const EquilibriumPoint& eq);

struct RadialEigenCheck {
  bool stable = false;
  std::complex<double> s1, s2;  // roots of s^2 + k_v s + k_r
};

/// Eigenvalues of the closed-loop radial subsystem [[0, 1], [-k_r, -k_v]].
/// Stable exactly when both gains are positive.
RadialEigenCheck radial_eigen_check(double k_r, double k_v);

}  // namespace areosync
