#include "hmt/chart.hpp"

#include <cmath>
#include <sstream>

#include "hmt/errors.hpp"

namespace hmt {

namespace {

std::string point_str(const Vec& y) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < y.size(); ++i) os << (i ? ", " : "") << y[i];
  os << ")";
  return os.str();
}

} // namespace

Chart::Chart(std::string name, int dim, MetricFn metric, MetricDerivFn metric_derivs,
             Vec box_lo, Vec box_hi)
    : name_(std::move(name)),
      dim_(dim),
      metric_(std::move(metric)),
      metric_derivs_(std::move(metric_derivs)),
      box_lo_(std::move(box_lo)),
      box_hi_(std::move(box_hi)),
      period_(Vec::Zero(dim)) {}

void Chart::set_coord_period(int alpha, double period) { period_[alpha] = period; }

Mat Chart::metric(const Vec& y) const { return metric_(y); }

Mat Chart::metric_inverse(const Vec& y) const {
  Mat h = metric_(y);
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("metric not positive definite at " + point_str(y) +
                            " on chart '" + name_ + "'");
  }
  return llt.solve(Mat::Identity(dim_, dim_));
}

double Chart::fd_step(const Vec& y) const {
  return 1e-5 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
}

Tensor3 Chart::metric_derivs(const Vec& y) const {
  if (metric_derivs_) return metric_derivs_(y);
  const double h = fd_step(y);
  Tensor3 d(dim_);
  Vec yp = y, ym = y;
  for (int g = 0; g < dim_; ++g) {
    yp[g] = y[g] + h;
    ym[g] = y[g] - h;
    Mat hp = metric_(yp);
    Mat hm = metric_(ym);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) d(g, a, b) = (hp(a, b) - hm(a, b)) / (2.0 * h);
    yp[g] = y[g];
    ym[g] = y[g];
  }
  return d;
}

Mat Chart::orthonormal_frame(const Vec& y) const {
  Mat h = metric_(y);
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("metric not positive definite at " + point_str(y) +
                            " on chart '" + name_ + "'");
  }
  // h = L L^T, so the columns of L^{-T} are h-orthonormal.
  Mat lti = llt.matrixL().toDenseMatrix().transpose().inverse();
  return lti.transpose(); // rows e_i with e_i^T h e_j = delta_ij
}

bool Chart::inside(const Vec& y, double margin) const {
  for (int i = 0; i < dim_; ++i) {
    if (period_[i] > 0.0) continue; // periodic coordinate never exits
    if (!(y[i] > box_lo_[i] + margin && y[i] < box_hi_[i] - margin)) return false;
  }
  return true;
}

void Chart::require_inside(const Vec& y, double margin) const {
  if (!inside(y, margin)) {
    std::ostringstream os;
    os << "point " << point_str(y) << " outside domain of chart '" << name_ << "'";
    if (margin > 0.0) os << " (margin " << margin << ")";
    throw DomainError(os.str());
  }
}

double Chart::coord_delta(int alpha, double a, double b) const {
  double d = b - a;
  const double p = period_[alpha];
  if (p > 0.0) {
    d = std::remainder(d, p); // (-p/2, p/2]
  }
  return d;
}

Vec Chart::coord_delta(const Vec& a, const Vec& b) const {
  Vec d(dim_);
  for (int i = 0; i < dim_; ++i) d[i] = coord_delta(i, a[i], b[i]);
  return d;
}

Tensor3 christoffel(const Chart& chart, const Vec& y) {
  const int n = chart.dim();
  chart.require_inside(y, chart.has_analytic_derivs() ? 0.0 : chart.fd_step(y));
  Mat hinv = chart.metric_inverse(y);
  Tensor3 dh = chart.metric_derivs(y); // dh(g,a,b) = d_g h_ab
  Tensor3 gamma(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double s = 0.0;
        for (int d = 0; d < n; ++d)
          s += hinv(a, d) * (dh(b, d, c) + dh(c, d, b) - dh(d, b, c));
        gamma(a, b, c) = 0.5 * s;
        gamma(a, c, b) = 0.5 * s;
      }
  return gamma;
}

Chart make_flat_chart(int n, const std::vector<double>& periods) {
  Vec lo = Vec::Constant(n, -1e9);
  Vec hi = Vec::Constant(n, 1e9);
  Chart c(
      "flat", n, [n](const Vec&) { return Mat::Identity(n, n); },
      [n](const Vec&) { return Tensor3(n); }, lo, hi);
  for (int i = 0; i < std::min<int>(n, static_cast<int>(periods.size())); ++i)
    if (periods[i] > 0.0) c.set_coord_period(i, periods[i]);
  return c;
}

Chart make_sphere2_chart() {
  Vec lo(2), hi(2);
  lo << 0.05, -1e9;
  hi << M_PI - 0.05, 1e9;
  Chart c(
      "sphere2", 2,
      [](const Vec& y) {
        Mat h = Mat::Zero(2, 2);
        h(0, 0) = 1.0;
        double s = std::sin(y[0]);
        h(1, 1) = s * s;
        return h;
      },
      [](const Vec& y) {
        Tensor3 d(2);
        d(0, 1, 1) = 2.0 * std::sin(y[0]) * std::cos(y[0]);
        return d;
      },
      lo, hi);
  c.set_coord_period(1, 2.0 * M_PI);
  return c;
}

Chart make_hyperbolic2_chart() {
  Vec lo(2), hi(2);
  lo << -1e9, 1e-6;
  hi << 1e9, 1e9;
  return Chart(
      "hyperbolic2", 2,
      [](const Vec& y) {
        double s = 1.0 / (y[1] * y[1]);
        return Mat(Mat::Identity(2, 2) * s);
      },
      [](const Vec& y) {
        Tensor3 d(2);
        double s = -2.0 / (y[1] * y[1] * y[1]);
        d(1, 0, 0) = s;
        d(1, 1, 1) = s;
        return d;
      },
      lo, hi);
}

Chart chart_by_name(const std::string& name, int dim, const std::vector<double>& periods) {
  if (name == "flat") return make_flat_chart(dim, periods);
  if (name == "sphere2") return make_sphere2_chart();
  if (name == "hyperbolic2") return make_hyperbolic2_chart();
  throw ConfigError("unknown chart '" + name + "'", "chart.name");
}

} // namespace hmt
