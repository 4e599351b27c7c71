#pragma once

#include <cstddef>
#include <vector>

#include "oacs/fields.hpp"

namespace oacs {

/// Family J_theta(p) = Q(theta,p) J0(p) Q(theta,p)^T of orthogonal almost
/// complex structure fields around a base field J0.
///
/// Q = (I - A)(I + A)^{-1} is the Cayley transform of A = P_p B(theta,u) P_p,
/// where P_p projects onto T_p and B is the skew matrix whose (i,k) entry,
/// i < k, is sum over monomials m of degree <= `degree` in the unit-direction
/// coordinates u of theta[m * pair_count + pair(i,k)] * m(u). Since A is skew
/// and vanishes on normals, Q is orthogonal and preserves T_p. Monomials are
/// ordered by degree, so a lower-degree family is a prefix of the parameters.
class GaugeParametrization {
 public:
  static constexpr int kMaxAmbient = 16;
  static constexpr std::size_t kMaxMonomials = 1024;

  GaugeParametrization(ACSField base, int degree);

  /// Family with no free parameters (only J0 itself).
  static GaugeParametrization trivial(ACSField base);

  const ACSField& base() const { return base_; }
  int degree() const { return degree_; }
  bool is_trivial() const { return trivial_; }
  std::size_t monomial_count() const { return monomials_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t parameter_count() const { return trivial_ ? 0 : monomials_.size() * pairs_.size(); }

  Matrix generator(const Vector& theta, const EmbeddedPoint& p) const;
  Matrix rotation(const Vector& theta, const EmbeddedPoint& p) const;
  Matrix structure(const Vector& theta, const EmbeddedPoint& p) const;

  /// Parameters of this family giving the same field as `theta` in `lower`
  /// (same ambient space, degree not above this one): theta padded with zeros.
  Vector lift(const Vector& theta, const GaugeParametrization& lower) const;

  /// Field for a parameter vector; shares the base field's domain.
  ACSField field(Vector theta) const;

 private:
  GaugeParametrization(ACSField base, int degree, bool trivial);

  void check(const Vector& theta) const;
  template <typename M>
  M generator_as(const Vector& theta, const EmbeddedPoint& p) const;
  template <typename M>
  M rotation_as(const Vector& theta, const EmbeddedPoint& p) const;

  ACSField base_;
  int degree_ = 0;
  bool trivial_ = false;
  std::vector<std::vector<int>> monomials_;  // index multisets, sorted
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace oacs
