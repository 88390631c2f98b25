#ifndef HMT_VERIFY_HPP
#define HMT_VERIFY_HPP

#include <string>
#include <vector>

#include "hmt/field_ops.hpp"
#include "hmt/grid.hpp"

namespace hmt {

/// Scalar function on a chart with an analytic gradient (used for conformal
/// factors on the target).
struct ChartFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient; // covector components d_a v
};

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

/// Outcome of one identity check. `convergence_order` is NaN when the check ran
/// on a single grid or sits at an exact-arithmetic floor where decay rates are
/// meaningless. Pass policy: residual below the identity's registered tolerance
/// at the finest spacing, and measured order >= 1.5 for identities whose
/// residual is finite-difference dominated.
struct IdentityReport {
  std::string identity_name;
  double max_residual = 0.0;
  std::vector<double> grid_spacings;
  double convergence_order = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::fail;
  std::string detail;
};

/// Bochner identity for the Levi-Civita connection on a flat domain:
/// Lap(|dphi|^2/2) = |nabla dphi|^2 - <R(dphi_i,dphi_j)dphi_j,dphi_i>
///                   + <nabla_j tau, dphi_j>.
/// Holds for arbitrary smooth maps; the residual is pure discretization error.
IdentityReport bochner_residual_lc(const MapState& map);

/// Bochner identity with torsion. Valid only on solutions: if the input's
/// tau_tor sup-norm exceeds the registered gate the verdict is inconclusive
/// (with the measured norm in `detail`), never an exception.
IdentityReport bochner_residual_tor(const MapState& map, const TorsionField& field);

/// Connection-Laplacian relation: Lap_Tor dphi(e_j) evaluated directly versus
/// the Levi-Civita side plus torsion terms, per node and direction.
IdentityReport laplacian_relation_check(const MapState& map, const TorsionField& field);

/// Conformal rescaling of the flat domain metric by a constant factor e^{2u}:
/// tau_tor rebuilt from the scaled metric must equal e^{-2u} tau_tor nodewise
/// (relative error), and the torsion contraction must scale the same way.
IdentityReport conformal_domain_check(const MapState& map, const TorsionField& field,
                                      double u);

/// Conformal rescaling of the target metric by e^{2v}: tension with the scaled
/// chart against tau + 2<dphi,grad v>dphi - |dphi|^2 grad v, with the pairing
/// term evaluated through composite grid differences of v(phi) so the two sides
/// are genuinely independent discretizations. Also verifies the factor-two
/// relation against the vectorial-torsion contraction with V = grad v.
IdentityReport conformal_target_check(const MapState& map, const ChartFunction& v);

/// The registered identity suite: fixed fixtures on grid sequences with
/// convergence-order measurement, tolerances frozen in code.
std::vector<IdentityReport> run_identity_suite();

bool all_pass(const std::vector<IdentityReport>& reports);

} // namespace hmt

#endif
