#ifndef HMT_EXTRINSIC_HPP
#define HMT_EXTRINSIC_HPP

#include "hmt/grid.hpp"
#include "hmt/torsion.hpp"

namespace hmt {

/// Map into the unit sphere embedded in R^3, one ambient unit vector per node.
struct EmbeddedMapState {
  GridDomain domain;
  NodeField values; // nodes x 3, |row| = 1

  /// Throws ValidationError when any node norm deviates from 1 beyond 1e-9.
  void require_unit(double tol = 1e-9) const;
  /// Rescale every node to the sphere (post: |row| = 1 within 1e-12).
  void renormalize();
};

/// Pointwise embedding of a sphere2 chart map:
/// (theta, phi) -> (sin t cos p, sin t sin p, cos t).
EmbeddedMapState embed_sphere(const MapState& map);

/// Residual of the extrinsic equation on the unit sphere:
/// tangential part of Lap phi + |dphi|^2 phi + A(dphi, dphi), with the torsion
/// endomorphism evaluated through the sphere2 chart on tangential projections.
NodeField tension_tor_extrinsic(const EmbeddedMapState& map, const TorsionField& field);

/// Pull ambient tangent vectors (one per node) back to sphere2 chart components
/// at the image points of `chart_map` (the map the embedding was built from).
NodeField pull_to_chart(const MapState& chart_map, const NodeField& ambient);

/// Antisymmetry check of the first-order extrinsic coefficients
/// B_i^{ab} = A^a_gb d_i phi^g: returns max |B_i^{ab} + B_i^{ba}| over nodes,
/// directions and index pairs (a structural validation, not a solver path).
double extrinsic_b_antisymmetry_defect(const MapState& chart_map, const TorsionField& field);

} // namespace hmt

#endif
