#include "hmt/geodesic.hpp"

#include <cmath>

#include "hmt/errors.hpp"

namespace hmt {

Vec geodesic_rhs(const Chart& chart, const TorsionField& field, const GeodesicState& state) {
  chart.require_inside(state.gamma,
                       chart.has_analytic_derivs() ? 0.0 : chart.fd_step(state.gamma));
  const int n = chart.dim();
  Tensor3 coeff = christoffel(chart, state.gamma);
  if (!field.is_zero()) coeff += field.eval(chart, state.gamma).raised;
  const Vec& v = state.gamma_prime;
  Vec acc = Vec::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) s += coeff(a, b, d) * v[b] * v[d];
    acc[a] = -s;
  }
  return acc;
}

namespace {

bool finite(const GeodesicState& s) {
  return s.gamma.allFinite() && s.gamma_prime.allFinite();
}

GeodesicState axpy(const GeodesicState& s, double a, const Vec& dpos, const Vec& dvel) {
  return GeodesicState{s.gamma + a * dpos, s.gamma_prime + a * dvel};
}

} // namespace

Trajectory integrate(const Chart& chart, const TorsionField& field,
                     const GeodesicState& initial, double step, int n_steps,
                     IntegratorMethod method) {
  if (step <= 0.0) throw ValidationError("integration step must be positive", step);
  chart.require_inside(initial.gamma);

  Trajectory traj;
  traj.step = step;
  traj.method = method;
  traj.samples.reserve(static_cast<size_t>(n_steps) + 1);
  traj.samples.emplace_back(0.0, initial);

  GeodesicState s = initial;
  for (int k = 0; k < n_steps; ++k) {
    GeodesicState next = s;
    try {
      if (method == IntegratorMethod::euler) {
        Vec a = geodesic_rhs(chart, field, s);
        next = axpy(s, step, s.gamma_prime, a);
      } else {
        Vec k1v = geodesic_rhs(chart, field, s);
        Vec k1x = s.gamma_prime;
        GeodesicState s2 = axpy(s, 0.5 * step, k1x, k1v);
        Vec k2v = geodesic_rhs(chart, field, s2);
        Vec k2x = s2.gamma_prime;
        GeodesicState s3 = axpy(s, 0.5 * step, k2x, k2v);
        Vec k3v = geodesic_rhs(chart, field, s3);
        Vec k3x = s3.gamma_prime;
        GeodesicState s4 = axpy(s, step, k3x, k3v);
        Vec k4v = geodesic_rhs(chart, field, s4);
        Vec k4x = s4.gamma_prime;
        next.gamma = s.gamma + (step / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        next.gamma_prime = s.gamma_prime + (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      }
    } catch (const DomainError&) {
      traj.truncated = true;
      return traj;
    }
    if (!finite(next)) {
      throw DivergenceError("geodesic state became non-finite at step " + std::to_string(k + 1),
                            k + 1);
    }
    if (!chart.inside(next.gamma)) {
      traj.truncated = true;
      return traj;
    }
    s = next;
    traj.samples.emplace_back(step * (k + 1), s);
  }
  return traj;
}

double speed_squared(const Chart& chart, const GeodesicState& state) {
  Mat h = chart.metric(state.gamma);
  return state.gamma_prime.dot(h * state.gamma_prime);
}

double speed_drift(const Trajectory& traj, const Chart& chart) {
  if (traj.samples.empty()) throw ValidationError("empty trajectory", 0.0);
  const double s0 = speed_squared(chart, traj.samples.front().second);
  double drift = 0.0;
  for (const auto& [s, state] : traj.samples)
    drift = std::max(drift, std::abs(speed_squared(chart, state) - s0));
  return drift;
}

} // namespace hmt
