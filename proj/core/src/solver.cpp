#include "hmt/solver.hpp"

#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/jacobi.hpp"

namespace hmt {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::diverged: return "diverged";
    case Termination::left_chart: return "left_chart";
  }
  return "unknown";
}

NodeField laplace_solve_meanfree(const GridDomain& d, const NodeField& rhs, double rel_tol) {
  const int N = d.nodes();
  NodeField out(N, rhs.cols());
  for (int c = 0; c < rhs.cols(); ++c) {
    Eigen::VectorXd b = rhs.col(c);
    const double scale = b.lpNorm<Eigen::Infinity>();
    b.array() -= b.mean();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(N);
    // A mean-free part at roundoff scale relative to the input is noise, and
    // chasing twelve orders of magnitude on it destabilizes the recurrence.
    if (b.lpNorm<Eigen::Infinity>() <= 1e-13 * std::max(1.0, scale)) {
      out.col(c) = u;
      continue;
    }
    Eigen::VectorXd r = b;
    Eigen::VectorXd p = r;
    double rs = r.squaredNorm();
    const double target = rel_tol * rel_tol * rs;
    NodeField pf(N, 1), apf(N, 1);
    for (int it = 0; it < 20 * N && rs > target && rs > 0.0; ++it) {
      pf.col(0) = p;
      apf = -grid_laplacian(d, pf); // L = -Lap, SPD on mean-free fields
      Eigen::VectorXd ap = apf.col(0);
      ap.array() -= ap.mean(); // guard roundoff drift of the mean mode
      const double pap = p.dot(ap);
      if (!(pap > 1e-30 * p.squaredNorm())) break; // lost orthogonality, stop
      const double alpha = rs / pap;
      u += alpha * p;
      r -= alpha * ap;
      const double rs_new = r.squaredNorm();
      if (!(rs_new < rs)) break; // stagnation at the attainable accuracy
      p = r + (rs_new / rs) * p;
      rs = rs_new;
    }
    u.array() -= u.mean();
    out.col(c) = u;
  }
  return out;
}

namespace {

double residual_norm(const MapState& map, const NodeField& tau) {
  return sup_metric_norm(map, tau);
}

} // namespace

std::pair<MapState, ConvergenceReport> solve_fixed_point(const MapState& initial,
                                                         const TorsionField& field,
                                                         const SolveConfig& cfg) {
  MapState phi = initial;
  phi.require_inside_chart();
  ConvergenceReport rep;

  NodeField tau = tension_tor(phi, field);
  double res = residual_norm(phi, tau);
  const double res0 = res;
  if (res < cfg.tol) {
    rep.terminated = Termination::converged;
    rep.final_energy = dirichlet_energy(phi);
    return {phi, rep};
  }

  for (int it = 0; it < cfg.max_iters; ++it) {
    NodeField update = laplace_solve_meanfree(phi.domain, tau);
    MapState next = phi;
    next.values += cfg.damping * update;
    if (!next.inside_chart()) {
      rep.terminated = Termination::left_chart;
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
    NodeField tau_next;
    try {
      tau_next = tension_tor(next, field);
    } catch (const DomainError&) {
      rep.terminated = Termination::left_chart;
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
    phi = std::move(next);
    tau = std::move(tau_next);
    res = residual_norm(phi, tau);
    rep.residual_history.push_back(res);
    rep.iterations = it + 1;

    if (res < cfg.tol) {
      rep.terminated = Termination::converged;
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
    if (res > 10.0 * res0) {
      rep.terminated = Termination::diverged;
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
  }
  rep.terminated = Termination::max_iters;
  rep.final_energy = dirichlet_energy(phi);
  return {phi, rep};
}

std::pair<MapState, ConvergenceReport> solve_newton(const MapState& initial,
                                                    const TorsionField& field,
                                                    const SolveConfig& cfg) {
  MapState phi = initial;
  phi.require_inside_chart();
  ConvergenceReport rep;
  const int n = phi.dim();
  const int N = phi.domain.nodes();

  NodeField tau = tension_tor(phi, field);
  double res = residual_norm(phi, tau);
  if (res < cfg.tol) {
    rep.terminated = Termination::converged;
    rep.final_energy = dirichlet_energy(phi);
    return {phi, rep};
  }

  for (int it = 0; it < cfg.max_iters; ++it) {
    JacobiOperator op = assemble(phi, field, JacobiForm::levi_civita);
    Eigen::PartialPivLU<Mat> lu(op.matrix());
    Eigen::VectorXd rhs(N * n);
    for (int k = 0; k < N; ++k)
      for (int a = 0; a < n; ++a) rhs[k * n + a] = -tau(k, a);
    Eigen::VectorXd step = lu.solve(rhs);

    // Symmetry directions (e.g. translations along flat target coordinates)
    // put exact zeros in the spectrum at solutions; a numerically singular
    // factorization is fatal only when it cannot reproduce the right side.
    if (!(lu.rcond() > 1e-13)) {
      const bool usable = step.allFinite() && rhs.norm() > 0.0 &&
                          (op.matrix() * step - rhs).norm() <= 0.5 * rhs.norm();
      if (!usable) {
        Eigen::BDCSVD<Mat> svd(op.matrix());
        const double sigma_min = svd.singularValues().tail(1)(0);
        throw SingularJacobianError(
            "newton jacobian numerically singular (smallest singular value " +
                std::to_string(sigma_min) + ")",
            sigma_min);
      }
    }
    NodeField eta(N, n);
    for (int k = 0; k < N; ++k)
      for (int a = 0; a < n; ++a) eta(k, a) = step[k * n + a];

    // Backtracking on the residual norm.
    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt, alpha *= 0.5) {
      MapState cand = phi;
      cand.values += alpha * eta;
      if (!cand.inside_chart()) continue;
      NodeField tau_cand;
      try {
        tau_cand = tension_tor(cand, field);
      } catch (const DomainError&) {
        continue;
      }
      const double res_cand = residual_norm(cand, tau_cand);
      if (res_cand < res) {
        phi = std::move(cand);
        tau = std::move(tau_cand);
        res = res_cand;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      rep.terminated = Termination::max_iters; // no descent direction left
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
    rep.residual_history.push_back(res);
    rep.iterations = it + 1;
    if (res < cfg.tol) {
      rep.terminated = Termination::converged;
      rep.final_energy = dirichlet_energy(phi);
      return {phi, rep};
    }
  }
  rep.terminated = Termination::max_iters;
  rep.final_energy = dirichlet_energy(phi);
  return {phi, rep};
}

} // namespace hmt
