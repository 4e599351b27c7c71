#include "oacs/fields.hpp"

#include <cmath>

#include "oacs/octonion.hpp"

namespace oacs {

namespace {

Matrix cross_matrix(const Vector& u) {
  Matrix m(3, 3);
  m << 0.0, -u(2), u(1),  //
      u(2), 0.0, -u(0),   //
      -u(1), u(0), 0.0;
  return m;
}

// f1 -> f2, f3 -> f4 for orthonormal f1..f4 (columns of frame).
Matrix structure_from_frame(const Matrix& frame) {
  Matrix m = Matrix::Zero(frame.rows(), frame.rows());
  for (int k = 0; k + 1 < frame.cols(); k += 2) {
    m += frame.col(k + 1) * frame.col(k).transpose() - frame.col(k) * frame.col(k + 1).transpose();
  }
  return m;
}

}  // namespace

FactorStructure s2_rotation_structure() {
  return {"s2-rotation", 2, [](const Vector& u) { return cross_matrix(u); }, {}};
}

FactorStructure octonionic_structure() {
  return {"s6-octonion", 6,
          [](const Vector& u) { return Matrix(left_imaginary_product_matrix(Imaginary7(u))); },
          {}};
}

FactorStructure s4_chart_structure(double margin) {
  auto eval = [](const Vector& u) {
    Matrix frame(5, 4);
    for (int i = 0; i < 4; ++i) {
      Vector v = Vector::Unit(5, i) - u(i) * u;
      for (int k = 0; k < i; ++k) v -= frame.col(k).dot(v) * frame.col(k);
      frame.col(i) = v.normalized();
    }
    Matrix paired(5, 4);
    paired << frame.col(0), frame.col(2), frame.col(1), frame.col(3);
    return structure_from_frame(paired);
  };
  auto domain = [margin](const Vector& u) { return std::abs(u(4)) >= margin; };
  return {"s4-chart", 4, eval, domain};
}

FactorStructure s4_stereographic_structure(double margin) {
  auto eval = [](const Vector& u) {
    Vector w = u;
    w(4) += 1.0;
    const Matrix h = Matrix::Identity(5, 5) - 2.0 * w * w.transpose() / w.squaredNorm();
    return structure_from_frame(h.leftCols(4));
  };
  auto domain = [margin](const Vector& u) { return u(4) >= margin - 1.0; };
  return {"s4-stereographic", 4, eval, domain};
}

ACSField product_field(const EmbeddedProduct& geometry, std::vector<FactorStructure> factors) {
  const auto& man = geometry.manifold();
  if (factors.size() != man.factor_count()) {
    throw InvalidManifold("product_field: one structure per factor required");
  }
  for (std::size_t a = 0; a < factors.size(); ++a) {
    if (factors[a].dim != man.dim(a)) {
      throw InvalidManifold("product_field: structure '" + factors[a].name +
                            "' does not fit factor " + std::to_string(a + 1));
    }
  }
  auto geo = std::make_shared<const EmbeddedProduct>(geometry);
  auto shared = std::make_shared<const std::vector<FactorStructure>>(std::move(factors));
  auto eval = [geo, shared](const EmbeddedPoint& p) {
    const int n = geo->ambient_dim();
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < shared->size(); ++a) {
      const int o = geo->ambient_offset(a), s = geo->ambient_size(a);
      m.block(o, o, s, s) = (*shared)[a].matrix(p.directions.segment(o, s));
    }
    return m;
  };
  ACSField::Domain domain;
  bool any = false;
  for (const auto& f : *shared) any = any || static_cast<bool>(f.domain);
  if (any) {
    domain = [geo, shared](const EmbeddedPoint& p) {
      for (std::size_t a = 0; a < shared->size(); ++a) {
        const auto& f = (*shared)[a];
        if (f.domain && !f.domain(p.directions.segment(geo->ambient_offset(a), geo->ambient_size(a)))) {
          return false;
        }
      }
      return true;
    };
  }
  return {geo, eval, domain};
}

ACSField canonical_s2_field(const EmbeddedProduct& geometry) {
  if (!geometry.manifold().all_factors_have_dim(2)) {
    throw InvalidManifold("canonical_s2_field: every factor must be a 2-sphere");
  }
  return product_field(geometry, std::vector<FactorStructure>(geometry.manifold().factor_count(),
                                                              s2_rotation_structure()));
}

ACSField octonionic_s6_field(const EmbeddedProduct& geometry) {
  if (!geometry.manifold().all_factors_have_dim(6)) {
    throw InvalidManifold("octonionic_s6_field: every factor must be a 6-sphere");
  }
  return product_field(geometry, std::vector<FactorStructure>(geometry.manifold().factor_count(),
                                                              octonionic_structure()));
}

TangentField projected_constant_field(const EmbeddedProduct& geometry, Vector ambient) {
  if (ambient.size() != geometry.ambient_dim()) {
    throw ContractViolation("projected_constant_field: wrong ambient length");
  }
  auto geo = std::make_shared<const EmbeddedProduct>(geometry);
  return {geo, [geo, v = std::move(ambient)](const EmbeddedPoint& p) { return geo->project_tangent(p, v); }};
}

TangentField rotation_field(const EmbeddedProduct& geometry, std::size_t factor, Matrix skew) {
  const int s = geometry.ambient_size(factor);
  if (skew.rows() != s || skew.cols() != s) throw ContractViolation("rotation_field: wrong size");
  if ((skew + skew.transpose()).cwiseAbs().maxCoeff() > 1e-14) {
    throw ContractViolation("rotation_field: generator must be skew");
  }
  auto geo = std::make_shared<const EmbeddedProduct>(geometry);
  return {geo, [geo, factor, a = std::move(skew)](const EmbeddedPoint& p) {
            Vector v = Vector::Zero(geo->ambient_dim());
            const int o = geo->ambient_offset(factor), n = geo->ambient_size(factor);
            v.segment(o, n) = geo->radius(factor) * (a * p.directions.segment(o, n));
            return v;
          }};
}

TangentField scaled_field(ScalarFunction f, TangentField x) {
  auto geo = x.geometry_ptr();
  return {geo, [geo, f = std::move(f), x = std::move(x)](const EmbeddedPoint& p) {
            return Vector(f(geo->position(p)) * x.at(p));
          }};
}

TangentField sum_field(TangentField x, TangentField y) {
  auto geo = x.geometry_ptr();
  return {geo, [x = std::move(x), y = std::move(y)](const EmbeddedPoint& p) {
            return Vector(x.at(p) + y.at(p));
          }};
}

TangentField apply_field(ACSField j, TangentField x) {
  auto geo = x.geometry_ptr();
  return {geo, [j = std::move(j), x = std::move(x)](const EmbeddedPoint& p) {
            return Vector(j.at(p) * x.at(p));
          }};
}

OrthogonalACS restrict_to_tangent(const ACSField& j, const EmbeddedPoint& p) {
  const Matrix basis = j.geometry().tangent_basis(p);
  return {j.geometry().manifold(), basis.transpose() * j.at(p) * basis};
}

AuditReport validate_field_at(const ACSField& j, const EmbeddedPoint& p, double tol) {
  AuditReport report = validate_acs(restrict_to_tangent(j, p), tol);
  const auto& geo = j.geometry();
  const Matrix m = j.at(p);
  double normal_leak = 0.0;
  for (std::size_t a = 0; a < geo.manifold().factor_count(); ++a) {
    Vector u = Vector::Zero(geo.ambient_dim());
    u.segment(geo.ambient_offset(a), geo.ambient_size(a)) = geo.factor_part(p.directions, a);
    normal_leak = std::max(normal_leak, (m * u).cwiseAbs().maxCoeff());
    normal_leak = std::max(normal_leak, (m.transpose() * u).cwiseAbs().maxCoeff());
  }
  report.expect("normal_annihilation", normal_leak, 0.0, tol, "J(p) u_a = 0, J(p)^T u_a = 0");
  return report;
}

}  // namespace oacs
