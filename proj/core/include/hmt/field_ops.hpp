#ifndef HMT_FIELD_OPS_HPP
#define HMT_FIELD_OPS_HPP

#include <vector>

#include "hmt/grid.hpp"
#include "hmt/torsion.hpp"

namespace hmt {

/// Levi-Civita tension field tau(phi)^a = Lap phi^a + Gamma^a_bc d_i phi^b d_i phi^c,
/// 5-point Laplacian and central first differences, periodic wraparound.
NodeField tension(const MapState& map);

/// tau_tor = tau + A(dphi, dphi); `domain_conf_u` rescales the flat domain metric
/// to e^{2u} * delta (constant u), which multiplies every term by e^{-2u}.
NodeField tension_tor(const MapState& map, const TorsionField& field,
                      double domain_conf_u = 0.0);

/// The torsion part alone: A(dphi(e_i), dphi(e_i)) summed over the domain frame,
/// with the same conformal scaling convention.
NodeField torsion_contraction(const MapState& map, const TorsionField& field,
                              double domain_conf_u = 0.0);

/// Nodewise metric norm sup: max_k sqrt(h(phi_k)(w_k, w_k)).
double sup_metric_norm(const MapState& map, const NodeField& w);

/// Dirichlet energy E = sum h_ab(phi) d_i phi^a d_i phi^b dx dy, discretized with
/// forward (edge-midpoint) differences and edge-averaged metric; second order,
/// and on flat targets its discrete gradient is exactly the 5-point tension.
double dirichlet_energy(const MapState& map);

/// Energy density per node (the summand of dirichlet_energy without dx dy).
Eigen::VectorXd energy_density(const MapState& map);

/// | (E(map + t probe) - E(map)) / t + <probe, tau(map)>_grid | with the
/// first-variation pairing <a,b>_grid = 2 dx dy sum_k h(phi_k)(a_k, b_k).
/// The torsion field never enters either side; the value is torsion-independent
/// by construction (that is the point of the check).
double energy_gradient_check(const MapState& map, const TorsionField& field,
                             const NodeField& probe, double t);

/// sup over grid-node centers and the given radii of
/// (integral of |dphi|^2 over the periodic ball of radius r)^(1/2)  (dim M = 2).
double morrey_norm(const MapState& map, const std::vector<double>& radii);

/// Energy restricted to masked nodes (mask size = nodes()).
double local_energy(const MapState& map, const std::vector<std::uint8_t>& mask);

} // namespace hmt

#endif
