#include "hmt/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "hmt/errors.hpp"
#include "hmt/parallel.hpp"

namespace hmt {

namespace {

// out^a += s * T^a_bc x^b y^c
inline void add_bilinear(const Tensor3& t, const Eigen::RowVectorXd& x,
                         const Eigen::RowVectorXd& y, double s,
                         Eigen::Ref<Eigen::RowVectorXd> out) {
  const int n = t.dim();
  for (int a = 0; a < n; ++a) {
    double acc = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) acc += t(a, b, c) * x[b] * y[c];
    out[a] += s * acc;
  }
}

// w^a = T^a_bc x^b y^c
inline Eigen::RowVectorXd bilinear(const Tensor3& t, const Eigen::RowVectorXd& x,
                                   const Eigen::RowVectorXd& y) {
  Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(t.dim());
  add_bilinear(t, x, y, 1.0, w);
  return w;
}

// R^a_bcd from connection coefficients and their plain derivatives.
Tensor4 curvature_of(const Tensor3& c, const Tensor4& dc) {
  const int n = c.dim();
  Tensor4 r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          double s = dc(cc, a, d, b) - dc(d, a, cc, b);
          for (int m = 0; m < n; ++m) s += c(a, cc, m) * c(m, d, b) - c(a, d, m) * c(m, cc, b);
          r(a, b, cc, d) = s;
        }
  return r;
}

} // namespace

JacobiOperator::JacobiOperator(MapState base, TorsionField field, JacobiForm form)
    : base_(std::move(base)), field_(std::move(field)), form_(form) {
  st_ = compute_map_stencils(base_);
  NodeField tau_lc = tension(base_);

  const Chart& chart = *base_.chart;
  const int n = base_.dim();
  const int N = base_.domain.nodes();
  const bool tor = form_ == JacobiForm::torsion_connection;
  geom_.resize(N);

  for (int k = 0; k < N; ++k) {
    Vec y = base_.values.row(k).transpose();
    const double h = chart.fd_step(y);
    chart.require_inside(y, 2.0 * h);
    NodeGeom& g = geom_[k];
    g.gamma = christoffel(chart, y);
    g.a = field_.is_zero() ? Tensor3(n) : field_.eval(chart, y).raised;
    g.conn = tor ? g.gamma + g.a : g.gamma;
    g.dconn = connection_coeff_derivative(chart, field_, y, tor, h);
    if (field_.is_zero()) {
      g.na = Tensor4(n);
    } else {
      g.na = torsion_covariant_derivative(chart, field_, y, h);
    }
    // Curvature of the form's connection from the same coefficient derivatives.
    if (tor) {
      g.r = curvature_of(g.conn, g.dconn);
    } else {
      g.r = curvature_of(g.gamma, g.dconn);
    }
    g.tau = tau_lc.row(k).transpose();
  }
}

NodeField JacobiOperator::apply(const NodeField& eta) const {
  const GridDomain& dom = base_.domain;
  const int n = base_.dim();
  const int N = dom.nodes();

  // Sections along the map differentiate plainly (their components are vector
  // components, not chart coordinates).
  NodeField ex = grid_dx(dom, eta);
  NodeField ey = grid_dy(dom, eta);
  NodeField lap = grid_laplacian(dom, eta);

  const bool tor = form_ == JacobiForm::torsion_connection;
  NodeField out(N, n);
  Eigen::RowVectorXd acc(n), wx(n), wy(n), tmp(n);

  for (int k = 0; k < N; ++k) {
    const NodeGeom& g = geom_[k];
    const Eigen::RowVectorXd dpx = st_.dx.row(k), dpy = st_.dy.row(k);
    const Eigen::RowVectorXd e = eta.row(k);

    // Connection Laplacian of eta, expanded termwise with the form's connection.
    acc = lap.row(k);
    add_bilinear(g.conn, st_.lap.row(k), e, 1.0, acc); // C(Lap phi, eta)
    add_bilinear(g.conn, dpx, ex.row(k), 2.0, acc);    // 2 C(dphi, deta)
    add_bilinear(g.conn, dpy, ey.row(k), 2.0, acc);
    // dC tail: d_m C^a_bc dphi^m dphi^b eta^c, summed over directions.
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int m = 0; m < n; ++m)
        for (int b = 0; b < n; ++b) {
          const double q = dpx[m] * dpx[b] + dpy[m] * dpy[b];
          if (q == 0.0) continue;
          for (int c = 0; c < n; ++c) s += g.dconn(m, a, b, c) * q * e[c];
        }
      acc[a] += s;
    }
    // CC tail: C^a_bm C^m_ce dphi^b dphi^c eta^e.
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const double q = dpx[b] * dpx[c] + dpy[b] * dpy[c];
          if (q == 0.0) continue;
          for (int m = 0; m < n; ++m)
            for (int ee = 0; ee < n; ++ee)
              s += g.conn(a, b, m) * g.conn(m, c, ee) * q * e[ee];
        }
      acc[a] += s;
    }

    // Curvature term R(eta, dphi(e_i)) dphi(e_i): [R(X,Y)Z]^a = R^a_bcd Z^b X^c Y^d
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            s += g.r(a, b, c, d) * e[c] * (dpx[d] * dpx[b] + dpy[d] * dpy[b]);
      acc[a] += s;
    }

    // Covariant derivatives of eta with the Levi-Civita connection (the A-terms
    // in both displayed forms use nabla^LC).
    wx = ex.row(k);
    add_bilinear(g.gamma, dpx, e, 1.0, wx);
    wy = ey.row(k);
    add_bilinear(g.gamma, dpy, e, 1.0, wy);

    if (!field_.is_zero()) {
      if (!tor) {
        // (nabla_eta A)(dphi, dphi)
        for (int a = 0; a < n; ++a) {
          double s = 0.0;
          for (int gidx = 0; gidx < n; ++gidx)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                s += g.na(gidx, a, b, c) * e[gidx] * (dpx[b] * dpx[c] + dpy[b] * dpy[c]);
          acc[a] += s;
        }
        // A(nabla eta, dphi) + A(dphi, nabla eta)
        add_bilinear(g.a, wx, dpx, 1.0, acc);
        add_bilinear(g.a, wy, dpy, 1.0, acc);
        add_bilinear(g.a, dpx, wx, 1.0, acc);
        add_bilinear(g.a, dpy, wy, 1.0, acc);
      } else {
        // (nabla_{dphi(e_i)} A)(eta, dphi(e_i)) - (nabla_{dphi(e_i)} A)(dphi(e_i), eta)
        for (int a = 0; a < n; ++a) {
          double s = 0.0;
          for (int gidx = 0; gidx < n; ++gidx)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c) {
                s += g.na(gidx, a, b, c) *
                     (dpx[gidx] * (e[b] * dpx[c] - dpx[b] * e[c]) +
                      dpy[gidx] * (e[b] * dpy[c] - dpy[b] * e[c]));
              }
          acc[a] += s;
        }
        // + A(nabla eta, dphi) - A(dphi, nabla eta)
        add_bilinear(g.a, wx, dpx, 1.0, acc);
        add_bilinear(g.a, wy, dpy, 1.0, acc);
        add_bilinear(g.a, dpx, wx, -1.0, acc);
        add_bilinear(g.a, dpy, wy, -1.0, acc);
        // + A(eta, tau) - A(tau, eta)
        Eigen::RowVectorXd taur = g.tau.transpose();
        add_bilinear(g.a, e, taur, 1.0, acc);
        add_bilinear(g.a, taur, e, -1.0, acc);
        // + A(dphi, A(eta, dphi)) - A(dphi, A(dphi, eta))
        tmp = bilinear(g.a, e, dpx);
        add_bilinear(g.a, dpx, tmp, 1.0, acc);
        tmp = bilinear(g.a, e, dpy);
        add_bilinear(g.a, dpy, tmp, 1.0, acc);
        tmp = bilinear(g.a, dpx, e);
        add_bilinear(g.a, dpx, tmp, -1.0, acc);
        tmp = bilinear(g.a, dpy, e);
        add_bilinear(g.a, dpy, tmp, -1.0, acc);
      }
    }
    out.row(k) = acc;
  }
  return out;
}

const Mat& JacobiOperator::matrix() const {
  if (!assembled_) throw ValidationError("jacobi matrix not assembled", 0.0);
  return matrix_;
}

void JacobiOperator::build_matrix() {
  const int n = base_.dim();
  const int N = base_.domain.nodes();
  const int dofs = N * n;
  if (dofs > 20000)
    throw SizeCapError("dense jacobi assembly capped at 20000 dofs, got " +
                       std::to_string(dofs));
  matrix_ = Mat::Zero(dofs, dofs);
  parallel_for(dofs, [&](int col) {
    NodeField unit = NodeField::Zero(N, n);
    unit(col / n, col % n) = 1.0;
    NodeField jcol = apply(unit);
    for (int k = 0; k < N; ++k)
      for (int a = 0; a < n; ++a) matrix_(k * n + a, col) = jcol(k, a);
  });
  assembled_ = true;
}

JacobiOperator assemble(const MapState& map, const TorsionField& field, JacobiForm form) {
  JacobiOperator op(map, field, form);
  op.build_matrix();
  return op;
}

double linearization_check(const MapState& map, const TorsionField& field,
                           const NodeField& eta, double t) {
  NodeField tau0 = tension_tor(map, field);
  MapState moved = map;
  moved.values += t * eta;
  moved.require_inside_chart();
  NodeField taut = tension_tor(moved, field);

  // Transport the perturbed tension to normal coordinates at the base image:
  // v^a -> v^a + Gamma^a_bc (t eta)^b v^c, exact to first order in t.
  const int n = map.dim();
  for (int k = 0; k < map.domain.nodes(); ++k) {
    Tensor3 gamma = christoffel(*map.chart, map.values.row(k).transpose());
    Eigen::RowVectorXd corr = Eigen::RowVectorXd::Zero(n);
    add_bilinear(gamma, t * eta.row(k), taut.row(k), 1.0, corr);
    taut.row(k) += corr;
  }

  JacobiOperator op(map, field, JacobiForm::levi_civita);
  NodeField j = op.apply(eta);
  return ((taut - tau0) / t - j).cwiseAbs().maxCoeff();
}

std::vector<std::complex<double>> spectrum(const JacobiOperator& op, int k) {
  if (k == 0) return {};
  const Mat& m = op.matrix();
  if (k < 0 || k > m.rows())
    throw ValidationError("spectrum count k out of range", static_cast<double>(k));

  // Complex Schur of the complexified matrix: the real QR iteration stalls on
  // the tightly clustered near-conjugate groups these operators produce (high
  // multiplicities of the laplacian split by a small torsion), while the
  // complex iteration converges dependably.
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur;
  schur.setMaxIterations(100 * static_cast<Eigen::Index>(m.rows()));
  schur.compute((m / scale).cast<std::complex<double>>(), /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw EigenSolveError("eigenvalue iteration did not converge on the jacobi matrix");

  std::vector<std::complex<double>> ev;
  ev.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) ev.push_back(scale * schur.matrixT()(i, i));
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  ev.resize(k);
  return ev;
}

} // namespace hmt
