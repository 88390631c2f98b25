#ifndef HMT_SOLVER_HPP
#define HMT_SOLVER_HPP

#include <utility>
#include <vector>

#include "hmt/field_ops.hpp"
#include "hmt/grid.hpp"

namespace hmt {

enum class Termination { converged, max_iters, diverged, left_chart };

struct ConvergenceReport {
  int iterations = 0;
  std::vector<double> residual_history; // sup metric norm of tau_tor after each update
  Termination terminated = Termination::max_iters;
  double final_energy = 0.0;
};

struct SolveConfig {
  double damping = 0.8; // lambda in (0, 1]
  double tol = 1e-8;    // sup-norm target for tau_tor
  int max_iters = 500;
};

const char* termination_name(Termination t);

/// Damped fixed-point iteration phi <- phi + lambda * Linv[tau_tor(phi)], where
/// Linv inverts the (positive) 5-point grid Laplacian on the mean-free subspace
/// by conjugate gradients (relative tolerance 1e-12); the iterate's mean is left
/// unchanged. Reports diverged when the residual grows 10x above its starting
/// value; non-convergence is an outcome, not an error.
std::pair<MapState, ConvergenceReport> solve_fixed_point(const MapState& initial,
                                                         const TorsionField& field,
                                                         const SolveConfig& cfg);

/// Newton path: solves J_LC(eta) = -tau_tor(phi) densely with backtracking line
/// search on the residual norm. Throws SingularJacobianError (named smallest
/// singular value) when the assembled Jacobian is numerically singular.
std::pair<MapState, ConvergenceReport> solve_newton(const MapState& initial,
                                                    const TorsionField& field,
                                                    const SolveConfig& cfg);

/// Conjugate-gradient solve of the positive grid Laplacian L = -Lap on the
/// mean-free subspace, componentwise; the mean of the output is zero.
NodeField laplace_solve_meanfree(const GridDomain& d, const NodeField& rhs,
                                 double rel_tol = 1e-12);

} // namespace hmt

#endif
