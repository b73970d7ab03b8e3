#include "areosync/network.hpp"

#include <stdexcept>

namespace areosync {

Topology build_path_incidence(int n_sats) {
  if (n_sats < 2) {
    throw std::invalid_argument("build_path_incidence: need at least 2 satellites");
  }
  Topology topo;
  topo.n_sats = n_sats;
  topo.n_links = n_sats - 1;
  topo.incidence = Eigen::MatrixXd::Zero(n_sats, n_sats - 1);
  topo.link_ends.reserve(topo.n_links);
  for (int l = 0; l < topo.n_links; ++l) {
    topo.incidence(l, l) = 1.0;
    topo.incidence(l + 1, l) = -1.0;
    topo.link_ends.emplace_back(l, l + 1);
  }
  return topo;
}

Eigen::VectorXd link_inputs(const Eigen::VectorXd& omega, const Topology& topo) {
  if (omega.size() != topo.n_sats) {
    throw std::invalid_argument("link_inputs: omega has " +
                                std::to_string(omega.size()) + " entries, expected " +
                                std::to_string(topo.n_sats));
  }
  Eigen::VectorXd e(topo.n_links);
  link_inputs(std::span<const double>(omega.data(), omega.size()), topo,
              std::span<double>(e.data(), e.size()));
  return e;
}

void link_inputs(std::span<const double> omega, const Topology& topo,
                 std::span<double> e_out) {
  if (omega.size() != static_cast<std::size_t>(topo.n_sats) ||
      e_out.size() != static_cast<std::size_t>(topo.n_links)) {
    throw std::invalid_argument("link_inputs: dimension mismatch");
  }
  for (int l = 0; l < topo.n_links; ++l) {
    const auto [pos, neg] = topo.link_ends[l];
    e_out[l] = omega[pos] - omega[neg];
  }
}

double link_output(const LinkState& link) { return link.output_fn(link.theta_rel); }

Eigen::VectorXd coordination_vector(const Eigen::VectorXd& y, const Topology& topo) {
  if (y.size() != topo.n_links) {
    throw std::invalid_argument("coordination_vector: y has " +
                                std::to_string(y.size()) + " entries, expected " +
                                std::to_string(topo.n_links));
  }
  Eigen::VectorXd u(topo.n_sats);
  coordination_vector(std::span<const double>(y.data(), y.size()), topo,
                      std::span<double>(u.data(), u.size()));
  return u;
}

void coordination_vector(std::span<const double> y, const Topology& topo,
                         std::span<double> u_out) {
  if (y.size() != static_cast<std::size_t>(topo.n_links) ||
      u_out.size() != static_cast<std::size_t>(topo.n_sats)) {
    throw std::invalid_argument("coordination_vector: dimension mismatch");
  }
  for (int i = 0; i < topo.n_sats; ++i) u_out[i] = 0.0;
  for (int l = 0; l < topo.n_links; ++l) {
    const auto [pos, neg] = topo.link_ends[l];
    u_out[pos] -= y[l];
    u_out[neg] += y[l];
  }
}

double link_derivative(const LinkState&, double e_l) { return e_l; }

}  // namespace areosync
