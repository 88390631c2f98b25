#include "hmt/torsion.hpp"

#include <array>

#include "hmt/errors.hpp"

namespace hmt {

Tensor3 raise_torsion(const Tensor3& lowered, const Mat& hinv) {
  const int n = lowered.dim();
  Tensor3 raised(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += hinv(a, d) * lowered(b, c, d);
        raised(a, b, c) = s;
      }
  return raised;
}

double skew_defect(const Tensor3& lowered) {
  const int n = lowered.dim();
  double m = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        m = std::max(m, std::abs(lowered(a, b, c) + lowered(a, c, b)));
  return m;
}

namespace {

Tensor3 skew_symmetrize_last_two(const Tensor3& t) {
  const int n = t.dim();
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) out(a, b, c) = 0.5 * (t(a, b, c) - t(a, c, b));
  return out;
}

Tensor3 full_antisymmetrize(const Tensor3& t) {
  const int n = t.dim();
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        out(a, b, c) = (t(a, b, c) - t(a, c, b) + t(b, c, a) - t(b, a, c) +
                        t(c, a, b) - t(c, b, a)) /
                       6.0;
  return out;
}

Tensor3 vectorial_lowered(const Mat& h, const Vec& v) {
  const int n = static_cast<int>(v.size());
  Vec vflat = h * v; // V^flat
  Tensor3 a(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) a(x, y, z) = h(x, y) * vflat[z] - h(x, z) * vflat[y];
  return a;
}

} // namespace

TorsionField TorsionField::vectorial(std::function<Vec(const Vec&)> v_field) {
  TorsionField f;
  f.kind_ = Kind::vectorial;
  f.v_ = std::move(v_field);
  return f;
}

TorsionField TorsionField::vectorial_constant(const Vec& v) {
  return vectorial([v](const Vec&) { return v; });
}

TorsionField TorsionField::antisymmetric(std::function<Tensor3(const Vec&)> t_coeffs) {
  TorsionField f;
  f.kind_ = Kind::antisymmetric;
  f.coeffs_ = std::move(t_coeffs);
  return f;
}

TorsionField TorsionField::cartan(std::function<Tensor3(const Vec&)> s_coeffs) {
  TorsionField f;
  f.kind_ = Kind::cartan;
  f.coeffs_ = std::move(s_coeffs);
  return f;
}

TorsionField TorsionField::general(std::function<Tensor3(const Vec&)> a_coeffs) {
  TorsionField f;
  f.kind_ = Kind::general;
  f.coeffs_ = std::move(a_coeffs);
  return f;
}

Tensor3 TorsionField::eval_lowered(const Chart& chart, const Vec& y) const {
  chart.require_inside(y);
  const int n = chart.dim();
  switch (kind_) {
    case Kind::zero:
      return Tensor3(n);
    case Kind::vectorial:
      return vectorial_lowered(chart.metric(y), v_(y));
    case Kind::antisymmetric:
      return full_antisymmetrize(coeffs_(y));
    case Kind::cartan:
    case Kind::general:
      return skew_symmetrize_last_two(coeffs_(y));
  }
  return Tensor3(n);
}

TorsionCoeffs TorsionField::eval(const Chart& chart, const Vec& y) const {
  TorsionCoeffs c;
  c.lowered = eval_lowered(chart, y);
  c.raised = raise_torsion(c.lowered, chart.metric_inverse(y));
  return c;
}

double torsion_inner(const Tensor3& a, const Tensor3& b, const Mat& hinv) {
  const int n = a.dim();
  double s = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int xp = 0; xp < n; ++xp)
          for (int yp = 0; yp < n; ++yp)
            for (int zp = 0; zp < n; ++zp)
              s += a(x, y, z) * b(xp, yp, zp) * hinv(x, xp) * hinv(y, yp) * hinv(z, zp);
  return s;
}

Vec torsion_c12(const Tensor3& lowered, const Mat& h) {
  const int n = lowered.dim();
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("metric not positive definite in c12 frame");
  // h = L L^T: the rows of L^{-1} form an h-orthonormal frame.
  Mat frame = llt.matrixL().solve(Mat::Identity(n, n));
  Vec c = Vec::Zero(n);
  for (int z = 0; z < n; ++z) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += lowered(a, b, z) * frame(i, a) * frame(i, b);
    c[z] = s;
  }
  return c;
}

TorsionDecomposition cartan_decompose(const Tensor3& lowered, const Mat& h) {
  const int n = lowered.dim();
  if (n < 2) throw ValidationError("cartan_decompose needs dim >= 2", 0.0);
  const double defect = skew_defect(lowered);
  const double scale = std::max(1.0, lowered.max_abs());
  if (defect > 1e-12 * scale)
    throw ValidationError("torsion tensor not skew-adjoint (max violation " +
                              std::to_string(defect) + ")",
                          defect);

  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("metric not positive definite in cartan_decompose");
  Mat hinv = llt.solve(Mat::Identity(n, n));

  Vec c12 = torsion_c12(lowered, h);
  Vec v = hinv * c12 / static_cast<double>(n - 1);

  TorsionDecomposition out;
  out.vector_v = v;
  out.vectorial_part.lowered = vectorial_lowered(h, v);
  // Full antisymmetrization of a tensor already skew in the last two slots
  // reduces to the cyclic average.
  Tensor3 anti(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        anti(a, b, c) = (lowered(a, b, c) + lowered(b, c, a) + lowered(c, a, b)) / 3.0;
  out.antisymmetric_part.lowered = anti;
  out.cartan_part.lowered = lowered - out.vectorial_part.lowered - anti;

  out.vectorial_part.raised = raise_torsion(out.vectorial_part.lowered, hinv);
  out.antisymmetric_part.raised = raise_torsion(anti, hinv);
  out.cartan_part.raised = raise_torsion(out.cartan_part.lowered, hinv);
  return out;
}

Tensor3 torsion_tensor(const Tensor3& raised) {
  const int n = raised.dim();
  Tensor3 t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) t(a, b, c) = raised(a, b, c) - raised(a, c, b);
  return t;
}

} // namespace hmt
