#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oacs/audit_report.hpp"
#include "oacs/errors.hpp"
#include "oacs/tolerances.hpp"

namespace oacs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tangent vector at an implicit point, in the standard orthonormal product
/// frame. Factor a occupies coordinates [offset(a), offset(a) + dim(a)).
using FrameVector = Eigen::VectorXd;

/// Round sphere S^dim(curvature), radius 1/sqrt(curvature).
class SphereFactor {
 public:
  SphereFactor(int dim, double curvature);

  int dim() const { return dim_; }
  double curvature() const { return curvature_; }
  double radius() const { return 1.0 / std::sqrt(curvature_); }

  bool operator==(const SphereFactor&) const = default;

 private:
  int dim_;
  double curvature_;
};

/// Riemannian product of round even-dimensional spheres.
class ProductManifold {
 public:
  explicit ProductManifold(std::vector<SphereFactor> factors);

  const std::vector<SphereFactor>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }
  const SphereFactor& factor(std::size_t a) const;

  int total_dim() const { return total_dim_; }
  int offset(std::size_t a) const;
  int dim(std::size_t a) const { return factor(a).dim(); }
  const std::vector<int>& block_offsets() const { return offsets_; }

  // Largest sectional curvature over all factors.
  double max_curvature() const;

  bool all_factors_have_dim(int d) const;

  // Projection onto factor a (the x_a of a block decomposition).
  template <typename Derived>
  auto block(const Eigen::MatrixBase<Derived>& v, std::size_t a) const {
    check_size(v.size());
    return v.derived().segment(offset(a), dim(a));
  }

  // Zero-padded embedding of a factor-local vector.
  FrameVector embed(std::size_t a, const Eigen::Ref<const Vector>& local) const;

  // Unit frame vector e(a)_i (0-based i).
  FrameVector frame_vector(std::size_t a, int i) const;

  void check_size(Eigen::Index n) const {
    if (n != total_dim_) {
      throw ContractViolation("vector of length " + std::to_string(n) +
                              " on a manifold of dimension " + std::to_string(total_dim_));
    }
  }

  // "S^2(1)xS^4(1)"
  std::string describe() const;

  bool operator==(const ProductManifold& other) const { return factors_ == other.factors_; }

 private:
  std::vector<SphereFactor> factors_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

/// Closed-form curvature of a product of round spheres.
///
/// The convention is R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z and
/// R(X,Y,Z,W) = <R(X,Y)Z, W>, so that R(x,y,x,y) = -kappa on an orthonormal
/// pair spanning a factor plane.
class CurvatureOracle {
 public:
  explicit CurvatureOracle(ProductManifold manifold) : manifold_(std::move(manifold)) {}

  const ProductManifold& manifold() const { return manifold_; }

  // Sum over factors of <R_a(w_a, x_a) y_a, z_a>.
  template <typename DW, typename DX, typename DY, typename DZ>
  double operator()(const Eigen::MatrixBase<DW>& w, const Eigen::MatrixBase<DX>& x,
                    const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DZ>& z) const {
    manifold_.check_size(w.size());
    manifold_.check_size(x.size());
    manifold_.check_size(y.size());
    manifold_.check_size(z.size());
    double total = 0.0;
    for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
      const int off = manifold_.offset(a);
      const int d = manifold_.dim(a);
      const auto wa = w.segment(off, d);
      const auto xa = x.segment(off, d);
      const auto ya = y.segment(off, d);
      const auto za = z.segment(off, d);
      total += manifold_.factor(a).curvature() * (xa.dot(ya) * wa.dot(za) - wa.dot(ya) * xa.dot(za));
    }
    return total;
  }

 private:
  ProductManifold manifold_;
};

/// R_(a)(x,y)z = kappa (<y,z> x - <x,z> y) on a single round factor.
template <typename DX, typename DY, typename DZ>
Vector factor_curvature_endo(const SphereFactor& factor, const Eigen::MatrixBase<DX>& x,
                             const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DZ>& z) {
  if (x.size() != factor.dim() || y.size() != factor.dim() || z.size() != factor.dim()) {
    throw ContractViolation("factor_curvature_endo: arguments must have length " +
                            std::to_string(factor.dim()));
  }
  return factor.curvature() * (y.dot(z) * x - x.dot(z) * y);
}

template <typename DW, typename DX, typename DY, typename DZ>
double product_curvature(const CurvatureOracle& oracle, const Eigen::MatrixBase<DW>& w,
                         const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                         const Eigen::MatrixBase<DZ>& z) {
  return oracle(w, x, y, z);
}

/// Sectional curvature -R(x,y,x,y) / (|x|^2|y|^2 - <x,y>^2).
/// Throws DegenerateInput when the plane's relative area^2 is below `tol`.
template <typename DX, typename DY>
double sectional_curvature(const CurvatureOracle& oracle, const Eigen::MatrixBase<DX>& x,
                           const Eigen::MatrixBase<DY>& y, double tol = kDefaultTolerances.linalg) {
  const double xx = x.squaredNorm();
  const double yy = y.squaredNorm();
  const double xy = x.dot(y);
  const double area2 = xx * yy - xy * xy;
  if (!(area2 > tol * xx * yy) || xx == 0.0 || yy == 0.0) {
    throw DegenerateInput("sectional_curvature: x and y do not span a plane");
  }
  return -oracle(x, y, x, y) / area2;
}

/// Seeded check of the curvature symmetries and the first Bianchi identity on
/// random unit quadruples. One check per relation, holding the max violation.
AuditReport curvature_symmetry_audit(const CurvatureOracle& oracle, int sample_count,
                                     std::uint64_t seed,
                                     double tol = kDefaultTolerances.linalg);

}  // namespace oacs
