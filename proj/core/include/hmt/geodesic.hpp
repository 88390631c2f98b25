#ifndef HMT_GEODESIC_HPP
#define HMT_GEODESIC_HPP

#include <utility>
#include <vector>

#include "hmt/chart.hpp"
#include "hmt/torsion.hpp"

namespace hmt {

struct GeodesicState {
  Vec gamma;       // position in chart coordinates
  Vec gamma_prime; // velocity
};

enum class IntegratorMethod { rk4, euler };

/// Fixed-step trajectory: samples (s_k, state_k) with s_k = k * step.
/// `truncated` is set when the trajectory hit the chart boundary and stopped
/// early instead of erroring; boundary exit is an expected outcome.
struct Trajectory {
  std::vector<std::pair<double, GeodesicState>> samples;
  double step = 0.0;
  IntegratorMethod method = IntegratorMethod::rk4;
  bool truncated = false;
};

/// Acceleration of the autoparallel equation of the connection with torsion:
/// gamma''^a = -(Gamma^a_bd + A^a_bd) gamma'^b gamma'^d.
Vec geodesic_rhs(const Chart& chart, const TorsionField& field, const GeodesicState& state);

/// Fixed-step explicit integration (RK4 by default). The trajectory is truncated
/// with a flag if any stage leaves the chart; NaN/Inf state raises DivergenceError
/// with the step index.
Trajectory integrate(const Chart& chart, const TorsionField& field,
                     const GeodesicState& initial, double step, int n_steps,
                     IntegratorMethod method = IntegratorMethod::rk4);

/// max over samples of |h(gamma)(gamma',gamma') - h(gamma_0)(gamma'_0,gamma'_0)|.
double speed_drift(const Trajectory& traj, const Chart& chart);

/// h(gamma)(gamma', gamma') for one state.
double speed_squared(const Chart& chart, const GeodesicState& state);

} // namespace hmt

#endif
