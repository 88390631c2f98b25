#ifndef HMT_CHART_HPP
#define HMT_CHART_HPP

#include <functional>
#include <memory>
#include <string>

#include "hmt/tensor.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// A single coordinate patch of the target manifold: dimension, metric closure,
/// optional analytic metric derivatives, and an open domain box.
///
/// Coordinates may carry a period (e.g. the azimuthal angle of sphere2): grid
/// stencils and geodesic bookkeeping then compare coordinate values through the
/// minimal wrapped difference, which is what makes winding maps exact on the
/// discrete level. A period of 0 means the coordinate is an ordinary real line.
class Chart {
 public:
  using MetricFn = std::function<Mat(const Vec&)>;
  /// derivs(g, a, b) = d h_ab / d y^g.
  using MetricDerivFn = std::function<Tensor3(const Vec&)>;

  Chart() = default;
  Chart(std::string name, int dim, MetricFn metric, MetricDerivFn metric_derivs,
        Vec box_lo, Vec box_hi);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  const Vec& box_lo() const { return box_lo_; }
  const Vec& box_hi() const { return box_hi_; }

  void set_coord_period(int alpha, double period);
  double coord_period(int alpha) const { return period_[alpha]; }

  bool has_analytic_derivs() const { return static_cast<bool>(metric_derivs_); }

  /// Metric h(y). Positive definiteness is checked wherever the inverse is taken.
  Mat metric(const Vec& y) const;

  /// Inverse metric via Cholesky; throws ConditioningError if h is not SPD.
  Mat metric_inverse(const Vec& y) const;

  /// d h_ab / d y^g: analytic closure if present, otherwise central differences
  /// with step h_fd = 1e-5 * max(1, |y|_inf).
  Tensor3 metric_derivs(const Vec& y) const;

  /// Rows are an h-orthonormal frame at y, built from the Cholesky factor of h.
  Mat orthonormal_frame(const Vec& y) const;

  /// Finite-difference step used for metric derivatives at y.
  double fd_step(const Vec& y) const;

  bool inside(const Vec& y, double margin = 0.0) const;
  /// Throws DomainError when y is not at least `margin` inside the box.
  void require_inside(const Vec& y, double margin = 0.0) const;

  /// b - a in coordinate alpha, wrapped to (-p/2, p/2] when the coordinate is
  /// periodic with period p.
  double coord_delta(int alpha, double a, double b) const;
  /// Componentwise coord_delta.
  Vec coord_delta(const Vec& a, const Vec& b) const;

 private:
  std::string name_;
  int dim_ = 0;
  MetricFn metric_;
  MetricDerivFn metric_derivs_;
  Vec box_lo_, box_hi_;
  Vec period_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Levi-Civita connection coefficients Gamma^a_{bc} at y.
/// Symmetric in (b, c); uses analytic metric derivatives when the chart has them.
Tensor3 christoffel(const Chart& chart, const Vec& y);

/// Built-in charts. "flat": R^n with the identity metric (periods optional, for
/// torus targets). "sphere2": round unit sphere in (theta, phi) coordinates,
/// theta restricted to [0.05, pi - 0.05]. "hyperbolic2": upper half-plane.
Chart make_flat_chart(int n, const std::vector<double>& periods = {});
Chart make_sphere2_chart();
Chart make_hyperbolic2_chart();

/// Lookup by name for config files; throws ConfigError for unknown names.
/// For "flat", `dim` and `periods` apply.
Chart chart_by_name(const std::string& name, int dim = 2,
                    const std::vector<double>& periods = {});

} // namespace hmt

#endif
