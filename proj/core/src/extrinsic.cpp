#include "hmt/extrinsic.hpp"

#include <cmath>

#include "hmt/errors.hpp"

namespace hmt {

void EmbeddedMapState::require_unit(double tol) const {
  for (int k = 0; k < values.rows(); ++k) {
    const double dev = std::abs(values.row(k).norm() - 1.0);
    if (dev > tol)
      throw ValidationError("embedded map node off the unit sphere by " + std::to_string(dev),
                            dev);
  }
}

void EmbeddedMapState::renormalize() {
  for (int k = 0; k < values.rows(); ++k) values.row(k) /= values.row(k).norm();
}

EmbeddedMapState embed_sphere(const MapState& map) {
  EmbeddedMapState out;
  out.domain = map.domain;
  out.values = NodeField(map.domain.nodes(), 3);
  for (int k = 0; k < map.domain.nodes(); ++k) {
    const double t = map.values(k, 0), p = map.values(k, 1);
    out.values(k, 0) = std::sin(t) * std::cos(p);
    out.values(k, 1) = std::sin(t) * std::sin(p);
    out.values(k, 2) = std::cos(t);
  }
  return out;
}

namespace {

// Embedding jacobian at (theta, phi): columns d_theta, d_phi in R^3.
Eigen::Matrix<double, 3, 2> sphere_jacobian(double t, double p) {
  Eigen::Matrix<double, 3, 2> j;
  j(0, 0) = std::cos(t) * std::cos(p);
  j(1, 0) = std::cos(t) * std::sin(p);
  j(2, 0) = -std::sin(t);
  j(0, 1) = -std::sin(t) * std::sin(p);
  j(1, 1) = std::sin(t) * std::cos(p);
  j(2, 1) = 0.0;
  return j;
}

Vec chart_point_of(const Eigen::RowVector3d& u) {
  Vec y(2);
  y[0] = std::acos(std::clamp(u[2], -1.0, 1.0));
  y[1] = std::atan2(u[1], u[0]);
  return y;
}

// Ambient torsion action A(X, Y) via the chart: tangential projections of X, Y
// are pulled back through the embedding jacobian, contracted with the raised
// chart coefficients, and pushed forward again.
struct AmbientTorsion {
  Eigen::Matrix<double, 3, 2> j;
  Eigen::Matrix2d hinv;
  Tensor3 a; // raised chart coefficients

  Eigen::Vector3d act(const Eigen::Vector3d& x, const Eigen::Vector3d& y) const {
    Eigen::Vector2d xc = hinv * (j.transpose() * x);
    Eigen::Vector2d yc = hinv * (j.transpose() * y);
    Eigen::Vector2d out;
    for (int al = 0; al < 2; ++al) {
      double s = 0.0;
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) s += a(al, b, c) * xc[b] * yc[c];
      out[al] = s;
    }
    return j * out;
  }
};

AmbientTorsion ambient_torsion_at(const Chart& chart, const TorsionField& field,
                                  const Eigen::RowVector3d& u) {
  AmbientTorsion at;
  Vec y = chart_point_of(u);
  chart.require_inside(y);
  at.j = sphere_jacobian(y[0], y[1]);
  Mat h = chart.metric(y);
  at.hinv = Eigen::Matrix2d(h).inverse();
  at.a = field.eval(chart, y).raised;
  return at;
}

} // namespace

NodeField tension_tor_extrinsic(const EmbeddedMapState& map, const TorsionField& field) {
  map.require_unit();
  const GridDomain& d = map.domain;
  const Chart chart = make_sphere2_chart();

  NodeField dx = grid_dx(d, map.values);
  NodeField dy = grid_dy(d, map.values);
  NodeField lap = grid_laplacian(d, map.values);

  NodeField out(d.nodes(), 3);
  for (int k = 0; k < d.nodes(); ++k) {
    Eigen::Vector3d phi = map.values.row(k).transpose();
    Eigen::Vector3d gx = dx.row(k).transpose();
    Eigen::Vector3d gy = dy.row(k).transpose();
    const double e = gx.squaredNorm() + gy.squaredNorm();
    Eigen::Vector3d r = lap.row(k).transpose() + e * phi;
    if (!field.is_zero()) {
      AmbientTorsion at = ambient_torsion_at(chart, field, map.values.row(k));
      r += at.act(gx, gx) + at.act(gy, gy);
    }
    r -= r.dot(phi) * phi; // tangential projection at phi
    out.row(k) = r.transpose();
  }
  return out;
}

NodeField pull_to_chart(const MapState& chart_map, const NodeField& ambient) {
  const int N = chart_map.domain.nodes();
  NodeField out(N, 2);
  for (int k = 0; k < N; ++k) {
    const double t = chart_map.values(k, 0), p = chart_map.values(k, 1);
    Eigen::Matrix<double, 3, 2> j = sphere_jacobian(t, p);
    Mat h = chart_map.chart->metric(chart_map.values.row(k).transpose());
    Eigen::Vector2d v =
        Eigen::Matrix2d(h).inverse() * (j.transpose() * ambient.row(k).transpose());
    out.row(k) = v.transpose();
  }
  return out;
}

double extrinsic_b_antisymmetry_defect(const MapState& chart_map, const TorsionField& field) {
  if (field.is_zero()) return 0.0;
  const GridDomain& d = chart_map.domain;
  EmbeddedMapState emb = embed_sphere(chart_map);
  NodeField dx = grid_dx(d, emb.values);
  NodeField dy = grid_dy(d, emb.values);
  const Chart chart = make_sphere2_chart();

  double defect = 0.0;
  Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  for (int k = 0; k < d.nodes(); ++k) {
    AmbientTorsion at = ambient_torsion_at(chart, field, emb.values.row(k));
    for (const auto& g : {dx.row(k), dy.row(k)}) {
      Eigen::Matrix3d b;
      for (int col = 0; col < 3; ++col) b.col(col) = at.act(g.transpose(), id.col(col));
      // b(a, c) = B^{a c}; skew-adjointness of A makes it antisymmetric.
      defect = std::max(defect, (b + b.transpose()).cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

} // namespace hmt
