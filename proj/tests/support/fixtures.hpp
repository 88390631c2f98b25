#ifndef HMT_TESTS_FIXTURES_HPP
#define HMT_TESTS_FIXTURES_HPP

#include <cmath>

#include "hmt/grid.hpp"
#include "hmt/rng.hpp"

namespace hmt::testfix {

// Smooth seeded perturbation supported on even wavenumber pairs only. The
// discrete equator's rotation directions live at wavenumbers (+-1,0) and
// (0,+-1) and carry a small positive linearization eigenvalue (the 5-point
// symbol under-resolves |k|^2 = 1 while the curvature term is exact on the
// winding map), so a generic perturbation converges at first and then drifts
// off along those modes. Even-mode input can never couple into them, at any
// nonlinear order: sums and differences of even pairs stay even.
inline MapState even_mode_perturbation(const MapState& base, double amplitude,
                                       std::uint64_t seed) {
  const GridDomain& d = base.domain;
  const int n = base.dim();
  CounterRng rng(seed);
  NodeField delta = NodeField::Zero(d.nodes(), n);
  const int modes[4][2] = {{2, 0}, {0, 2}, {2, 2}, {2, -2}};
  std::uint64_t ctr = 0;
  for (int c = 0; c < n; ++c) {
    for (const auto& m : modes) {
      const double a = rng.uniform(ctr++, -1.0, 1.0);
      const double b = rng.uniform(ctr++, -1.0, 1.0);
      for (int i = 0; i < d.nx; ++i)
        for (int j = 0; j < d.ny; ++j) {
          const double ph = 2.0 * M_PI *
                            (m[0] * static_cast<double>(i) / d.nx +
                             m[1] * static_cast<double>(j) / d.ny);
          delta(d.id(i, j), c) += a * std::cos(ph) + b * std::sin(ph);
        }
    }
    const double sup = delta.col(c).lpNorm<Eigen::Infinity>();
    if (sup > 0.0) delta.col(c) *= amplitude / sup;
  }
  MapState out = base;
  out.values += delta;
  out.require_inside_chart();
  return out;
}

} // namespace hmt::testfix

#endif
