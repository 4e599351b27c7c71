#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oacs/acs.hpp"
#include "oacs/audit_report.hpp"
#include "oacs/embedded.hpp"

namespace oacs {

/// Smooth tangent vector field on an embedded product, given on the manifold
/// and extended off it radially per factor: X~(q) = X(project(q)).
class TangentField {
 public:
  using Evaluator = std::function<Vector(const EmbeddedPoint&)>;

  TangentField(EmbeddedProduct geometry, Evaluator eval)
      : geometry_(std::make_shared<const EmbeddedProduct>(std::move(geometry))),
        eval_(std::move(eval)) {}
  TangentField(std::shared_ptr<const EmbeddedProduct> geometry, Evaluator eval)
      : geometry_(std::move(geometry)), eval_(std::move(eval)) {}

  const EmbeddedProduct& geometry() const { return *geometry_; }
  const std::shared_ptr<const EmbeddedProduct>& geometry_ptr() const { return geometry_; }

  Vector at(const EmbeddedPoint& p) const { return eval_(p); }
  Vector extended(const Eigen::Ref<const Vector>& ambient) const {
    return eval_(geometry_->project(ambient));
  }

 private:
  std::shared_ptr<const EmbeddedProduct> geometry_;
  Evaluator eval_;
};

/// Field of orthogonal almost complex structures. The evaluator returns an
/// ambient_dim x ambient_dim matrix acting as J on T_p and as zero on the
/// normal directions. `domain` marks where the field is defined and smooth.
class ACSField {
 public:
  using Evaluator = std::function<Matrix(const EmbeddedPoint&)>;
  using Domain = std::function<bool(const EmbeddedPoint&)>;

  ACSField(EmbeddedProduct geometry, Evaluator eval, Domain domain = {})
      : geometry_(std::make_shared<const EmbeddedProduct>(std::move(geometry))),
        eval_(std::move(eval)),
        domain_(std::move(domain)) {}
  ACSField(std::shared_ptr<const EmbeddedProduct> geometry, Evaluator eval, Domain domain = {})
      : geometry_(std::move(geometry)), eval_(std::move(eval)), domain_(std::move(domain)) {}

  const EmbeddedProduct& geometry() const { return *geometry_; }
  const std::shared_ptr<const EmbeddedProduct>& geometry_ptr() const { return geometry_; }
  const Domain& domain() const { return domain_; }

  Matrix at(const EmbeddedPoint& p) const { return eval_(p); }
  Matrix extended(const Eigen::Ref<const Vector>& ambient) const {
    return eval_(geometry_->project(ambient));
  }
  bool contains(const EmbeddedPoint& p) const { return !domain_ || domain_(p); }

 private:
  std::shared_ptr<const EmbeddedProduct> geometry_;
  Evaluator eval_;
  Domain domain_;
};

/// Structure on a single round factor, as a function of the unit direction u:
/// a (d+1) x (d+1) matrix acting on u^perp (and killing u).
struct FactorStructure {
  std::string name;
  int dim = 0;
  std::function<Matrix(const Vector& u)> matrix;
  std::function<bool(const Vector& u)> domain;
};

/// v -> u x v on S^2.
FactorStructure s2_rotation_structure();

/// v -> Im(u v) on S^6 with u, v imaginary octonions.
FactorStructure octonionic_structure();

/// Constant complex structure f1 -> f3, f2 -> f4 in the Gram-Schmidt frame
/// f1..f4 of the projected coordinate vectors P e1, ..., P e4 of S^4 in R^5.
/// Smooth on |u_5| > 0; the domain keeps |u_5| >= margin. Not integrable.
/// (The pairing f1 -> f2, f3 -> f4 would be integrable: it rotates the
/// tangent planes of two orthogonal families of round 2-spheres.)
FactorStructure s4_chart_structure(double margin = 0.2);

/// Constant structure f1 -> f2, f3 -> f4 in the frame f_i = H e_i, H the reflection
/// swapping u and -e5. This is the pull-back of a constant structure of R^4
/// by stereographic projection from -e5 and is therefore integrable on its
/// domain (u_5 >= margin - 1).
FactorStructure s4_stereographic_structure(double margin = 0.2);

/// Block sum of per-factor structures. Throws InvalidManifold on a
/// dimension mismatch.
ACSField product_field(const EmbeddedProduct& geometry, std::vector<FactorStructure> factors);

// Product of canonical rotations on a product of 2-spheres.
ACSField canonical_s2_field(const EmbeddedProduct& geometry);

// Octonionic structure on every factor of a product of 6-spheres.
ACSField octonionic_s6_field(const EmbeddedProduct& geometry);

/// X(p) = P_p v for a fixed ambient vector v.
TangentField projected_constant_field(const EmbeddedProduct& geometry, Vector ambient);

/// X(p)_a = A x_a on factor a (A skew), zero elsewhere.
TangentField rotation_field(const EmbeddedProduct& geometry, std::size_t factor, Matrix skew);

using ScalarFunction = std::function<double(const Vector& ambient_position)>;

// (f X)(p) = f(position(p)) X(p).
TangentField scaled_field(ScalarFunction f, TangentField x);

TangentField sum_field(TangentField x, TangentField y);

// (J X)(p) = J(p) X(p).
TangentField apply_field(ACSField j, TangentField x);

/// J(p) restricted to T_p in the tangent_basis frame.
OrthogonalACS restrict_to_tangent(const ACSField& j, const EmbeddedPoint& p);

/// validate_acs on the tangent restriction, plus a check that J(p) kills the
/// normal directions.
AuditReport validate_field_at(const ACSField& j, const EmbeddedPoint& p,
                              double tol = kDefaultTolerances.acs);

}  // namespace oacs
