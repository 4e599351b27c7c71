#include "oacs/acs.hpp"

#include <algorithm>

#include "oacs/random.hpp"

namespace oacs {

OrthogonalACS::OrthogonalACS(ProductManifold manifold, Matrix matrix)
    : manifold_(std::move(manifold)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != manifold_.total_dim() || matrix_.cols() != manifold_.total_dim()) {
    throw ContractViolation("OrthogonalACS: matrix must be " +
                            std::to_string(manifold_.total_dim()) + " square");
  }
}

Eigen::Block<const Matrix> OrthogonalACS::block(std::size_t a, std::size_t b) const {
  return matrix_.block(manifold_.offset(a), manifold_.offset(b), manifold_.dim(a),
                       manifold_.dim(b));
}

double OrthogonalACS::component(std::size_t a, std::size_t b, int i, int j) const {
  if (i < 0 || i >= manifold_.dim(a) || j < 0 || j >= manifold_.dim(b)) {
    throw ContractViolation("component index out of range");
  }
  return matrix_(manifold_.offset(b) + j, manifold_.offset(a) + i);
}

AuditReport validate_acs(const OrthogonalACS& j, double tol) {
  const Matrix& m = j.matrix();
  const auto n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  const auto& man = j.manifold();

  double block_skew = 0.0;
  double composition = 0.0;
  const std::size_t t = man.factor_count();
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      for (int i = 0; i < man.dim(a); ++i) {
        for (int k = 0; k < man.dim(b); ++k) {
          block_skew = std::max(block_skew, std::abs(j.component(a, b, i, k) + j.component(b, a, k, i)));
          double sum = 0.0;
          for (std::size_t c = 0; c < t; ++c) {
            for (int jj = 0; jj < man.dim(c); ++jj) {
              sum += j.component(a, c, i, jj) * j.component(c, b, jj, k);
            }
          }
          const double target = (a == b && i == k) ? -1.0 : 0.0;
          composition = std::max(composition, std::abs(sum - target));
        }
      }
    }
  }

  AuditReport report("almost complex structure on " + man.describe());
  report.expect("orthogonality", (m.transpose() * m - id).cwiseAbs().maxCoeff(), 0.0, tol,
                "<Jx,Jy> = <x,y>");
  report.expect("square_minus_identity", (m * m + id).cwiseAbs().maxCoeff(), 0.0, tol,
                "J^2 = -I");
  report.expect("skewness", (m.transpose() + m).cwiseAbs().maxCoeff(), 0.0, tol, "J^T = -J");
  report.expect("block_skew_relation", block_skew, 0.0, tol, "J(a,b)_ij = -J(b,a)_ji");
  report.expect("block_composition", composition, 0.0, tol,
                "sum_c sum_j J(a,c)_ij J(c,d)_jk = -delta_ik delta_ad");
  return report;
}

OrthogonalACS standard_acs(const ProductManifold& manifold) {
  const int n = manifold.total_dim();
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k + 1 < n; k += 2) {
    m(k + 1, k) = 1.0;
    m(k, k + 1) = -1.0;
  }
  return {manifold, std::move(m)};
}

OrthogonalACS canonical_product_2sphere_acs(const ProductManifold& manifold) {
  if (!manifold.all_factors_have_dim(2)) {
    throw InvalidManifold("canonical product structure needs every factor to be a 2-sphere");
  }
  // Offsets of 2-dim factors coincide with the consecutive pairs of J0.
  return standard_acs(manifold);
}

OrthogonalACS random_orthogonal_acs(const ProductManifold& manifold, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix q = random_orthogonal(manifold.total_dim(), rng);
  return conjugate(standard_acs(manifold), q);
}

OrthogonalACS random_block_diagonal_acs(const ProductManifold& manifold, std::uint64_t seed) {
  const int n = manifold.total_dim();
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < manifold.factor_count(); ++a) {
    const ProductManifold single({manifold.factor(a)});
    const auto local = random_orthogonal_acs(single, derive_seed(seed, a));
    m.block(manifold.offset(a), manifold.offset(a), manifold.dim(a), manifold.dim(a)) =
        local.matrix();
  }
  return {manifold, std::move(m)};
}

OrthogonalACS swap_acs(const ProductManifold& manifold) {
  if (manifold.factor_count() != 2 || manifold.dim(0) != manifold.dim(1)) {
    throw InvalidManifold("swap structure needs exactly two factors of equal dimension");
  }
  const int d = manifold.dim(0);
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  m.block(d, 0, d, d).setIdentity();
  m.block(0, d, d, d) = -Matrix::Identity(d, d);
  return {manifold, std::move(m)};
}

OrthogonalACS conjugate(const OrthogonalACS& j, const Matrix& q) {
  if (q.rows() != j.dim() || q.cols() != j.dim()) {
    throw ContractViolation("conjugate: Q has wrong size");
  }
  return {j.manifold(), q * j.matrix() * q.transpose()};
}

}  // namespace oacs
