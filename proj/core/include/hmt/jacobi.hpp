#ifndef HMT_JACOBI_HPP
#define HMT_JACOBI_HPP

#include <complex>
#include <vector>

#include "hmt/curvature.hpp"
#include "hmt/field_ops.hpp"
#include "hmt/grid.hpp"

namespace hmt {

enum class JacobiForm { levi_civita, torsion_connection };

/// Linearization of the tension-with-torsion field at a base map, in one of the
/// two displayed forms:
///
///   levi_civita:        Lap_LC eta + R(eta, dphi) dphi + (nabla_eta A)(dphi, dphi)
///                       + A(nabla eta, dphi) + A(dphi, nabla eta)
///   torsion_connection: Lap_Tor eta + R_Tor(eta, dphi) dphi + eight torsion terms
///
/// Discretized with the same stencils as `tension`; curvature and nabla A come
/// from the geometry layer at each node's image point. The operator caches the
/// per-node geometry at construction; `apply` is matrix-free. The dense matrix
/// (node-major DOF ordering, column k = apply on the k-th unit perturbation)
/// exists after `assemble` ran. Not symmetric in general.
class JacobiOperator {
 public:
  JacobiOperator(MapState base, TorsionField field, JacobiForm form);

  const MapState& base_map() const { return base_; }
  const TorsionField& torsion_field() const { return field_; }
  JacobiForm form() const { return form_; }
  int dofs() const { return base_.domain.nodes() * base_.dim(); }

  /// J(eta) with eta shaped like the map values (nodes x n).
  NodeField apply(const NodeField& eta) const;

  bool has_matrix() const { return assembled_; }
  const Mat& matrix() const;

 private:
  friend JacobiOperator assemble(const MapState&, const TorsionField&, JacobiForm);
  void build_matrix();

  struct NodeGeom {
    Tensor3 conn;       // Gamma (LC form) or Gamma + A (torsion form)
    Tensor4 dconn;      // plain coordinate derivative of conn
    Tensor3 gamma;      // Gamma alone (for nabla^LC eta)
    Tensor3 a;          // raised torsion coefficients
    Tensor4 na;         // covariant nabla A
    Tensor4 r;          // curvature of the form's connection
    Vec tau;            // Levi-Civita tension at the node
  };

  MapState base_;
  TorsionField field_;
  JacobiForm form_;
  MapStencils st_;
  std::vector<NodeGeom> geom_;
  Mat matrix_;
  bool assembled_ = false;
};

/// Dense assembly (columnwise apply); desk-scale cap nodes * n <= 20000.
JacobiOperator assemble(const MapState& map, const TorsionField& field, JacobiForm form);

/// Operation alias mirroring the module surface.
inline NodeField jacobi_apply(const JacobiOperator& op, const NodeField& eta) {
  return op.apply(eta);
}

/// sup-norm of [tau_tor(map + t eta) - tau_tor(map)] / t - J_LC(eta), the
/// difference quotient compared componentwise after transporting the perturbed
/// tension to normal coordinates at the base image (first-order Christoffel
/// correction; a no-op on flat charts).
double linearization_check(const MapState& map, const TorsionField& field,
                           const NodeField& eta, double t);

/// k eigenvalues of smallest magnitude of the assembled matrix, ordered by
/// (|lambda|, Re, Im). Complex pairs are legal output.
std::vector<std::complex<double>> spectrum(const JacobiOperator& op, int k);

} // namespace hmt

#endif
