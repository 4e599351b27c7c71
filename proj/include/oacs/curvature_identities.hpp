#pragma once

#include <cstdint>
#include <optional>

#include "oacs/acs.hpp"
#include "oacs/audit_report.hpp"
#include "oacs/manifold.hpp"

namespace oacs {

/// Signed eight-term Gray combination
///   R(W,X,Y,Z) + R(JW,JX,JY,JZ) - R(JW,JX,Y,Z) - R(JW,X,JY,Z)
///   - R(JW,X,Y,JZ) - R(W,JX,JY,Z) - R(W,JX,Y,JZ) - R(W,X,JY,JZ),
/// which vanishes identically when J is integrable.
double gray_combination(const CurvatureOracle& oracle, const OrthogonalACS& j,
                        const Eigen::Ref<const Vector>& w, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y, const Eigen::Ref<const Vector>& z);

/// Seeded sweep of |gray_combination| over random structures and random unit
/// vectors. On a single round sphere the combination vanishes for every
/// orthogonal J and the row is asserted; on products it is only recorded.
/// Also asserts validate_acs on every sampled structure.
AuditReport audit_gray_cancellation(const CurvatureOracle& oracle, int sample_count,
                                    std::uint64_t seed, double tol = kDefaultTolerances.acs);

/// Gray combination on (x, y, x, y) for an orthonormal pair tangent to the
/// 2-sphere factor of S^2(alpha) x M'.
struct SplittingDefectResult {
  double direct = 0.0;       // eight-term sum
  double grouped = 0.0;      // same sum with paired terms merged
  double closed_form = 0.0;  // -alpha (1 - c^2)^2 + r2_term
  // -alpha (1 - |(Jx)_1|^2 |(Jy)_1|^2) + r2_term; shares the zero set of the
  // closed form but is a different polynomial in c.
  double norm_product_form = 0.0;
  double c = 0.0;        // <Jx, y>
  double r2_term = 0.0;  // curvature of M' on the M'-parts of (Jx, Jy, Jx, Jy)
};

/// Requires a 2-dimensional first factor (InvalidManifold) and x, y an
/// orthonormal pair supported in its block (ContractViolation).
SplittingDefectResult splitting_defect(const CurvatureOracle& oracle, const OrthogonalACS& j,
                                       const Eigen::Ref<const Vector>& x,
                                       const Eigen::Ref<const Vector>& y);

/// Splitting defect on the first two frame vectors e(1)_1, e(1)_2.
SplittingDefectResult splitting_defect(const CurvatureOracle& oracle, const OrthogonalACS& j);

/// Seeded sweep of the splitting defect over random and split structures.
AuditReport audit_splitting_defect(const CurvatureOracle& oracle, int sample_count,
                                   std::uint64_t seed, double tol = kDefaultTolerances.acs);

/// Ricci *-form rho*(X,Y) = -1/2 sum_k R(X, JY, e_k, J e_k) as a matrix with
/// entry (i,j) = rho*(e_i, e_j).
struct RicciStarForm {
  Matrix matrix;
  OrthogonalACS acs;

  const ProductManifold& manifold() const { return acs.manifold(); }

  double operator()(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) const {
    return x.dot(matrix * y);
  }
};

/// rho*(X,Y) by direct contraction over a frame (columns of `frame`, standard
/// frame when omitted).
double ricci_star_value(const CurvatureOracle& oracle, const OrthogonalACS& j,
                        const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y,
                        const std::optional<Matrix>& frame = std::nullopt);

RicciStarForm ricci_star(const CurvatureOracle& oracle, const OrthogonalACS& j,
                         const std::optional<Matrix>& frame = std::nullopt);

/// max |rho*(X,Y) - rho*(JY,JX)| over seeded unit pairs.
AuditReport ricci_star_identity_check(const RicciStarForm& form, int sample_count,
                                      std::uint64_t seed, double tol = kDefaultTolerances.audit);

/// Identity rho*(X,Y) = rho*(JY,JX) over seeded (J, X, Y) samples with a
/// fresh random structure per sample (values by direct contraction), and
/// frame invariance of the contraction for one seeded orthonormal frame.
AuditReport audit_ricci_star_identity(const CurvatureOracle& oracle, int sample_count, std::uint64_t seed,
                                      double tol = kDefaultTolerances.audit);

/// Component audit on a product of 6-spheres. For every factor pair (a,b) and
/// index pair (i,j) the six Ricci *-components
///   rho*(e(a)_i, e(a)_j),  rho*(e(a)_i, e(b)_j),  rho*(e(a)_i, J e(a)_j),
///   rho*(e(a)_i, J e(b)_j), rho*(J e(a)_i, e(a)_j), rho*(J e(b)_i, e(a)_j)
/// are contracted directly and compared, as recorded (not asserted) rows,
/// with the closed-form values beta_a delta_ij, 0, beta_a J(a,a)_ji, 0,
/// beta_a J(a,a)_ij and -beta_a J(a,b)_ij. Mixed families only use a != b.
AuditReport audit_block_components(const CurvatureOracle& oracle, const OrthogonalACS& j,
                                   double tol = kDefaultTolerances.audit);

/// Family maxima of audit_block_components over seeded random block-diagonal
/// structures, asserted: on structures preserving every factor all six closed
/// forms hold.
AuditReport audit_block_diagonal_components(const CurvatureOracle& oracle, int sample_count,
                                            std::uint64_t seed, double tol = kDefaultTolerances.audit);

/// Family names used as row-name prefixes by audit_block_components.
inline constexpr const char* kBlockComponentFamilies[6] = {
    "rho*(e(a)_i,e(a)_j)",   "rho*(e(a)_i,e(b)_j)",   "rho*(e(a)_i,Je(a)_j)",
    "rho*(e(a)_i,Je(b)_j)",  "rho*(Je(a)_i,e(a)_j)",  "rho*(Je(b)_i,e(a)_j)"};

struct BlockSplittingProbe {
  double symmetry_defect = 0.0;  // max |rho*_ij - rho*_ji|
  double off_block_mass = 0.0;   // max over a != b of |J(a,b)_ij|
};

/// Data pair for studying "rho* symmetric implies J preserves each factor".
BlockSplittingProbe block_splitting_probe(const RicciStarForm& form);

}  // namespace oacs
