#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace areosync {

/// Oriented path-graph communication topology. Link l connects satellites l
/// and l+1 (0-indexed); orientation points in the direction of orbital motion,
/// so satellite l is the positive end. Satellites 0 and N-1 share no link.
struct Topology {
  int n_sats = 0;
  int n_links = 0;
  Eigen::MatrixXd incidence;  // N x M, every column one +1 and one -1
  // (positive, negative) node of each link; derived from the incidence matrix.
  std::vector<std::pair<int, int>> link_ends;
};

/// Path incidence matrix: D(l, l) = +1, D(l+1, l) = -1. Requires n_sats >= 2.
Topology build_path_incidence(int n_sats);

/// Link output map h. Strictly increasing and onto the real line. Affine by
/// default: h(theta_rel) = theta_rel - theta_rel_d. A custom map may be
/// supplied; it must preserve the increasing/onto properties.
struct LinkOutputFn {
  double theta_rel_d = 0.0;  // desired spacing offset for the affine form, rad
  std::function<double(double)> custom;

  bool affine() const { return !static_cast<bool>(custom); }
  double operator()(double theta_rel) const {
    return custom ? custom(theta_rel) : theta_rel - theta_rel_d;
  }
};

/// Relative-angle integrator state of one communication link. theta_rel is
/// unwrapped: the storage integral and the onto-R output map both live on the
/// real line, and wrapping would introduce spurious discontinuities.
struct LinkState {
  double theta_rel = 0.0;  // rad
  LinkOutputFn output_fn;
};

/// Link inputs e = D^T omega; for the path graph e_l = omega_l - omega_{l+1}.
/// Throws std::invalid_argument on dimension mismatch.
Eigen::VectorXd link_inputs(const Eigen::VectorXd& omega, const Topology& topo);
/// Allocation-free overload used by the integrator hot path.
void link_inputs(std::span<const double> omega, const Topology& topo,
                 std::span<double> e_out);

/// y_l = h_l(theta_rel_l).
double link_output(const LinkState& link);

/// Coordination inputs u = -D y. Each u_i depends only on links incident to
/// satellite i, and 1^T u = 0 since the incidence columns sum to zero.
Eigen::VectorXd coordination_vector(const Eigen::VectorXd& y, const Topology& topo);
void coordination_vector(std::span<const double> y, const Topology& topo,
                         std::span<double> u_out);

/// d(theta_rel_l)/dt = e_l. The link state integrates its input directly.
double link_derivative(const LinkState& link, double e_l);

}  // namespace areosync
