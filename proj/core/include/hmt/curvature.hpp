#ifndef HMT_CURVATURE_HPP
#define HMT_CURVATURE_HPP

#include "hmt/chart.hpp"
#include "hmt/tensor.hpp"
#include "hmt/torsion.hpp"

namespace hmt {

enum class ConnectionKind { levi_civita, torsion };

/// Curvature tensor at a point, sign convention
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
///
/// Storage: values(a,b,c,d) = R^a_bcd with R(d_c, d_d) d_b = R^a_bcd d_a,
/// antisymmetric in (c,d). For the torsion connection, `route_discrepancy` is
/// the max-abs difference between the finite-difference route (derivatives of
/// the full connection) and the algebraic route built from R_LC, nabla A and
/// A o A; it is 0 for the Levi-Civita connection.
struct CurvatureTensor {
  Tensor4 values;
  ConnectionKind connection = ConnectionKind::levi_civita;
  double route_discrepancy = 0.0;
};

/// Curvature of the chosen connection at y. `fd_step` is the step used to
/// differentiate the connection coefficients (default 1e-4 * max(1, |y|_inf));
/// y must sit at least 2 * fd_step inside the chart box.
CurvatureTensor curvature(const Chart& chart, const TorsionField& field, const Vec& y,
                          ConnectionKind connection, double fd_step = -1.0);

/// [R(X,Y)Z]^a from a stored tensor.
Vec curvature_action(const CurvatureTensor& r, const Vec& x, const Vec& y, const Vec& z);

/// Covariant derivative of the torsion endomorphism in raised components:
/// out(g,a,b,c) = (nabla_g A)^a_bc (finite differences of the raised
/// coefficients plus Christoffel corrections).
Tensor4 torsion_covariant_derivative(const Chart& chart, const TorsionField& field,
                                     const Vec& y, double fd_step = -1.0);

/// Plain coordinate derivative of the connection coefficients (Gamma alone, or
/// Gamma + A when with_torsion): out(g,a,b,c) = d_g C^a_bc, central differences.
Tensor4 connection_coeff_derivative(const Chart& chart, const TorsionField& field,
                                    const Vec& y, bool with_torsion,
                                    double fd_step = -1.0);

} // namespace hmt

#endif
