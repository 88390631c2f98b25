#include "hmt/curvature.hpp"

#include <cmath>

#include "hmt/errors.hpp"

namespace hmt {

namespace {

double default_step(const Vec& y, double fd_step) {
  if (fd_step > 0.0) return fd_step;
  return 1e-4 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
}

// Full connection coefficients C^a_bc = Gamma^a_bc (+ A^a_bc).
Tensor3 connection_coeffs(const Chart& chart, const TorsionField& field, const Vec& y,
                          bool with_torsion) {
  Tensor3 c = christoffel(chart, y);
  if (with_torsion && !field.is_zero()) {
    TorsionCoeffs a = field.eval(chart, y);
    c += a.raised;
  }
  return c;
}

// R^a_bcd = d_c C^a_db - d_d C^a_cb + C^a_cm C^m_db - C^a_dm C^m_cb,
// with d_g C by central differences of step h.
Tensor4 curvature_from_connection(const Chart& chart, const TorsionField& field,
                                  const Vec& y, bool with_torsion, double h) {
  const int n = chart.dim();
  std::vector<Tensor3> dC(n, Tensor3(n));
  Vec yp = y, ym = y;
  for (int g = 0; g < n; ++g) {
    yp[g] = y[g] + h;
    ym[g] = y[g] - h;
    Tensor3 cp = connection_coeffs(chart, field, yp, with_torsion);
    Tensor3 cm = connection_coeffs(chart, field, ym, with_torsion);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) dC[g](a, b, c) = (cp(a, b, c) - cm(a, b, c)) / (2.0 * h);
    yp[g] = y[g];
    ym[g] = y[g];
  }
  Tensor3 c0 = connection_coeffs(chart, field, y, with_torsion);
  Tensor4 r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = dC[c](a, d, b) - dC[d](a, c, b);
          for (int m = 0; m < n; ++m)
            s += c0(a, c, m) * c0(m, d, b) - c0(a, d, m) * c0(m, c, b);
          r(a, b, c, d) = s;
        }
  return r;
}

} // namespace

Tensor4 connection_coeff_derivative(const Chart& chart, const TorsionField& field,
                                    const Vec& y, bool with_torsion, double fd_step) {
  const int n = chart.dim();
  const double h = fd_step > 0.0 ? fd_step : chart.fd_step(y);
  chart.require_inside(y, 2.0 * h);
  Tensor4 out(n);
  Vec yp = y, ym = y;
  for (int g = 0; g < n; ++g) {
    yp[g] = y[g] + h;
    ym[g] = y[g] - h;
    Tensor3 cp = connection_coeffs(chart, field, yp, with_torsion);
    Tensor3 cm = connection_coeffs(chart, field, ym, with_torsion);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) out(g, a, b, c) = (cp(a, b, c) - cm(a, b, c)) / (2.0 * h);
    yp[g] = y[g];
    ym[g] = y[g];
  }
  return out;
}

Tensor4 torsion_covariant_derivative(const Chart& chart, const TorsionField& field,
                                     const Vec& y, double fd_step) {
  const int n = chart.dim();
  const double h = default_step(y, fd_step);
  chart.require_inside(y, 2.0 * h);
  Tensor3 gamma = christoffel(chart, y);
  Tensor3 a0 = field.eval(chart, y).raised;
  Tensor4 out(n);
  Vec yp = y, ym = y;
  for (int g = 0; g < n; ++g) {
    yp[g] = y[g] + h;
    ym[g] = y[g] - h;
    Tensor3 ap = field.eval(chart, yp).raised;
    Tensor3 am = field.eval(chart, ym).raised;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double s = (ap(a, b, c) - am(a, b, c)) / (2.0 * h);
          for (int m = 0; m < n; ++m) {
            s += gamma(a, g, m) * a0(m, b, c);
            s -= gamma(m, g, b) * a0(a, m, c);
            s -= gamma(m, g, c) * a0(a, b, m);
          }
          out(g, a, b, c) = s;
        }
    yp[g] = y[g];
    ym[g] = y[g];
  }
  return out;
}

CurvatureTensor curvature(const Chart& chart, const TorsionField& field, const Vec& y,
                          ConnectionKind connection, double fd_step) {
  const int n = chart.dim();
  const double h = default_step(y, fd_step);
  chart.require_inside(y, 2.0 * h);

  CurvatureTensor out;
  out.connection = connection;
  if (connection == ConnectionKind::levi_civita) {
    out.values = curvature_from_connection(chart, field, y, false, h);
    out.route_discrepancy = 0.0;
    return out;
  }

  // Route (a): finite differences of the full connection Gamma + A.
  Tensor4 direct = curvature_from_connection(chart, field, y, true, h);

  // Route (b): R_LC + (nabla_c A)(d,b) - (nabla_d A)(c,b) + A(c, A(d,b)) - A(d, A(c,b)).
  // Differentiated at half the step so the two routes are independent
  // evaluations; with a shared step they recombine into identical arithmetic
  // and the comparison would only measure roundoff.
  Tensor4 rlc = curvature_from_connection(chart, field, y, false, 0.5 * h);
  Tensor4 na = torsion_covariant_derivative(chart, field, y, 0.5 * h);
  Tensor3 a0 = field.eval(chart, y).raised;
  Tensor4 formula(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = rlc(a, b, c, d) + na(c, a, d, b) - na(d, a, c, b);
          for (int m = 0; m < n; ++m)
            s += a0(a, c, m) * a0(m, d, b) - a0(a, d, m) * a0(m, c, b);
          formula(a, b, c, d) = s;
        }

  out.values = direct;
  out.route_discrepancy = (direct - formula).max_abs();
  return out;
}

Vec curvature_action(const CurvatureTensor& r, const Vec& x, const Vec& y, const Vec& z) {
  const int n = r.values.dim();
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += r.values(a, b, c, d) * z[b] * x[c] * y[d];
    out[a] = s;
  }
  return out;
}

} // namespace hmt
