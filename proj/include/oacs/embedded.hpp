#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "oacs/manifold.hpp"

namespace oacs {

/// Point of an embedded product of spheres, stored as the concatenated unit
/// directions u_a in R^{dim_a + 1}. The geometric point is x_a = r_a u_a with
/// r_a = 1 / sqrt(kappa_a).
struct EmbeddedPoint {
  Vector directions;
};

/// Each factor S^d(kappa) sits in R^{d+1} as the sphere of radius
/// 1/sqrt(kappa); the product sits in the direct sum of these spaces.
class EmbeddedProduct {
 public:
  explicit EmbeddedProduct(ProductManifold manifold);

  const ProductManifold& manifold() const { return manifold_; }
  int ambient_dim() const { return ambient_dim_; }
  int ambient_offset(std::size_t a) const { return ambient_offsets_.at(a); }
  int ambient_size(std::size_t a) const { return manifold_.dim(a) + 1; }
  double radius(std::size_t a) const { return manifold_.factor(a).radius(); }

  template <typename Derived>
  auto factor_part(const Eigen::MatrixBase<Derived>& v, std::size_t a) const {
    return v.derived().segment(ambient_offset(a), ambient_size(a));
  }

  Vector position(const EmbeddedPoint& p) const;

  /// Radial projection q -> (r_a q_a / |q_a|)_a. Throws DegenerateInput when a
  /// factor part is too close to the origin.
  EmbeddedPoint project(const Eigen::Ref<const Vector>& ambient) const;

  /// Point from unit directions; throws ContractViolation unless every
  /// factor part has unit norm.
  EmbeddedPoint point_from_directions(const Eigen::Ref<const Vector>& directions) const;

  Matrix tangent_projector(const EmbeddedPoint& p) const;
  Vector project_tangent(const EmbeddedPoint& p, const Eigen::Ref<const Vector>& v) const;

  /// Orthonormal basis of T_p as the columns of an ambient_dim x total_dim
  /// matrix, with factor a's columns at the frame offsets of factor a.
  Matrix tangent_basis(const EmbeddedPoint& p) const;

  /// max_a |<v_a, u_a>|
  double normal_component(const EmbeddedPoint& p, const Eigen::Ref<const Vector>& v) const;

 private:
  ProductManifold manifold_;
  std::vector<int> ambient_offsets_;
  int ambient_dim_ = 0;
};

/// Fibonacci lattice of n unit vectors in R^3:
///   z_i = 1 - (2i + 1)/n,  phi_i = 2 pi i / golden_ratio^2.
std::vector<Vector> fibonacci_sphere_points(int n);

/// Seeded low-discrepancy unit vectors in R^{dim+1}: a Halton sequence
/// (indices 1..n, first primes as bases starting at `prime_offset`) with a
/// seeded Cranley-Patterson shift, mapped to Gaussians by Box-Muller and
/// normalized.
std::vector<Vector> halton_sphere_points(int dim, int n, std::uint64_t seed, int prime_offset = 0);

/// n sample points of the product accepted by `domain`. 2-sphere factors use
/// the Fibonacci lattice (rotated by a seeded rotation after the first
/// round), higher spheres use halton_sphere_points with disjoint bases; rounds
/// repeat until n candidates are accepted.
std::vector<EmbeddedPoint> sample_points(
    const EmbeddedProduct& geometry, int n, std::uint64_t seed,
    const std::function<bool(const EmbeddedPoint&)>& domain = {});

/// One point per line: whitespace-separated ambient coordinates x_a = r_a u_a
/// of all factors, in factor order. '#' starts a comment.
std::vector<EmbeddedPoint> load_points(std::istream& in, const EmbeddedProduct& geometry);
void save_points(std::ostream& out, const EmbeddedProduct& geometry,
                 const std::vector<EmbeddedPoint>& points);

}  // namespace oacs
