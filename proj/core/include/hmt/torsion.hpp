#ifndef HMT_TORSION_HPP
#define HMT_TORSION_HPP

#include <functional>

#include "hmt/chart.hpp"
#include "hmt/tensor.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Torsion endomorphism coefficients at a point.
///
/// lowered(a,b,c) = A_abc = <A(d_a, d_b), d_c>, skew in the last two slots
/// (that is the metric-compatibility condition on the connection).
/// raised(a,b,c) = A^a_bc = h^{ad} A_bcd, so A(X,Y)^a = raised(a,b,c) X^b Y^c.
struct TorsionCoeffs {
  Tensor3 lowered;
  Tensor3 raised;
};

/// Builds raised coefficients from lowered ones and the inverse metric at the point.
Tensor3 raise_torsion(const Tensor3& lowered, const Mat& hinv);

/// Max over index triples of |A_abc + A_acb| (skew-adjointness defect).
double skew_defect(const Tensor3& lowered);

/// A position-dependent torsion endomorphism on a chart.
class TorsionField {
 public:
  enum class Kind { zero, vectorial, antisymmetric, cartan, general };

  TorsionField() : kind_(Kind::zero) {}

  static TorsionField zero() { return TorsionField(); }
  /// A(X,Y) = <X,Y> V - <V,Y> X for a vector field V on the chart.
  static TorsionField vectorial(std::function<Vec(const Vec&)> v_field);
  static TorsionField vectorial_constant(const Vec& v);
  /// Fully antisymmetric coefficients; the closure is antisymmetrized over all
  /// six slot permutations on evaluation, so the class membership is exact.
  static TorsionField antisymmetric(std::function<Tensor3(const Vec&)> t_coeffs);
  /// Cartan-type coefficient closure (produced e.g. from a prior decomposition).
  /// Only skew-adjointness is enforced here.
  static TorsionField cartan(std::function<Tensor3(const Vec&)> s_coeffs);
  /// Arbitrary lowered coefficients; skew-adjointness in the last two slots is
  /// enforced exactly by antisymmetrization.
  static TorsionField general(std::function<Tensor3(const Vec&)> a_coeffs);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }

  /// Lowered + raised coefficients at y. The point must lie inside the chart.
  TorsionCoeffs eval(const Chart& chart, const Vec& y) const;

  /// Lowered coefficients only (no metric inversion needed for zero/general kinds
  /// on flat charts, but the signature stays uniform).
  Tensor3 eval_lowered(const Chart& chart, const Vec& y) const;

 private:
  Kind kind_;
  std::function<Vec(const Vec&)> v_;
  std::function<Tensor3(const Vec&)> coeffs_;
};

/// Operation alias mirroring the module surface.
inline TorsionCoeffs torsion_eval(const TorsionField& field, const Chart& chart,
                                  const Vec& y) {
  return field.eval(chart, y);
}

/// Orthogonal splitting of an admissible torsion tensor into vectorial,
/// totally antisymmetric and Cartan-type parts at a point with metric h.
struct TorsionDecomposition {
  TorsionCoeffs vectorial_part;
  Vec vector_v;
  TorsionCoeffs antisymmetric_part;
  TorsionCoeffs cartan_part;
};

/// Splits a skew-adjoint lowered tensor A against the metric h.
/// V is recovered as c12(A)^sharp / (n-1) with c12 taken in an h-orthonormal
/// frame; the antisymmetric part is the full antisymmetrization; the Cartan part
/// is the remainder. Throws ValidationError when A is not skew-adjoint.
TorsionDecomposition cartan_decompose(const Tensor3& lowered, const Mat& h);

/// Torsion tensor of the connection: T(X,Y) = A(X,Y) - A(Y,X), raised
/// coefficients T^a_bc = A^a_bc - A^a_cb (antisymmetric in (b,c)).
Tensor3 torsion_tensor(const Tensor3& raised);

/// Induced inner product <A,B> = A_abc B_a'b'c' h^aa' h^bb' h^cc' of lowered tensors.
double torsion_inner(const Tensor3& a, const Tensor3& b, const Mat& hinv);

/// c12(A)(Z) = sum_i A(e_i, e_i, Z) over an h-orthonormal frame; returned as the
/// covector of values on coordinate directions.
Vec torsion_c12(const Tensor3& lowered, const Mat& h);

} // namespace hmt

#endif
