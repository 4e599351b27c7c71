#pragma once

#include <cstdint>

#include "oacs/audit_report.hpp"
#include "oacs/manifold.hpp"

namespace oacs {

/// Pointwise orthogonal almost complex structure on the product tangent
/// space, as the matrix of J in the standard product frame (J v = matrix * v).
///
/// Construction only checks the size; validity is reported by validate_acs so
/// that invalid candidates can be audited.
class OrthogonalACS {
 public:
  OrthogonalACS(ProductManifold manifold, Matrix matrix);

  const Matrix& matrix() const { return matrix_; }
  const ProductManifold& manifold() const { return manifold_; }
  int dim() const { return manifold_.total_dim(); }

  template <typename Derived>
  Vector operator()(const Eigen::MatrixBase<Derived>& v) const {
    manifold_.check_size(v.size());
    return matrix_ * v;
  }

  /// dim(a) x dim(b) submatrix mapping factor-b coordinates to factor-a
  /// coordinates.
  Eigen::Block<const Matrix> block(std::size_t a, std::size_t b) const;

  /// Expansion coefficient J(a,b)_ij = <J e(a)_i, e(b)_j>, i.e. the factor-b
  /// component of the image of e(a)_i. Indices are 0-based. Note that
  /// component(a,b,i,j) = block(b,a)(j,i).
  double component(std::size_t a, std::size_t b, int i, int j) const;

 private:
  ProductManifold manifold_;
  Matrix matrix_;
};

/// Max defects of orthogonality, J^2 = -I, skewness, the block relation
/// J(a,b)_ij = -J(b,a)_ji and the blockwise composition
/// sum_c sum_j J(a,c)_ij J(c,d)_jk = -delta_ik delta_ad.
AuditReport validate_acs(const OrthogonalACS& j, double tol = kDefaultTolerances.acs);

/// J0 rotating consecutive coordinate pairs: e_{2k} -> e_{2k+1} -> -e_{2k}.
OrthogonalACS standard_acs(const ProductManifold& manifold);

/// Product of the canonical rotations of the 2-sphere factors.
/// Throws InvalidManifold unless every factor is 2-dimensional.
OrthogonalACS canonical_product_2sphere_acs(const ProductManifold& manifold);

/// Q J0 Q^T with Q Haar-distributed on O(n); deterministic in seed.
OrthogonalACS random_orthogonal_acs(const ProductManifold& manifold, std::uint64_t seed);

/// Independent random structures on each factor, assembled block-diagonally.
OrthogonalACS random_block_diagonal_acs(const ProductManifold& manifold, std::uint64_t seed);

/// Exchange of two equal-dimensional factors: e(1)_i -> e(2)_i, e(2)_i -> -e(1)_i.
OrthogonalACS swap_acs(const ProductManifold& manifold);

/// Q J Q^T for orthogonal Q.
OrthogonalACS conjugate(const OrthogonalACS& j, const Matrix& q);

}  // namespace oacs
