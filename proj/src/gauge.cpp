#include "oacs/gauge.hpp"

#include <cmath>
#include <memory>

namespace oacs {

namespace {

// Sorted index multisets of exactly `degree` entries, lexicographic.
void collect_monomials(int vars, int degree, int start, std::vector<int>& current,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == degree) {
    out.push_back(current);
    return;
  }
  for (int v = start; v < vars; ++v) {
    current.push_back(v);
    collect_monomials(vars, degree, v, current, out);
    current.pop_back();
  }
}

}  // namespace

GaugeParametrization::GaugeParametrization(ACSField base, int degree)
    : GaugeParametrization(std::move(base), degree, false) {}

GaugeParametrization GaugeParametrization::trivial(ACSField base) {
  return GaugeParametrization(std::move(base), 0, true);
}

GaugeParametrization::GaugeParametrization(ACSField base, int degree, bool trivial)
    : base_(std::move(base)), degree_(degree), trivial_(trivial) {
  if (degree < 0) throw ContractViolation("gauge degree must be >= 0");
  const int vars = base_.geometry().ambient_dim();
  if (vars > kMaxAmbient) {
    throw ContractViolation("gauge: ambient dimension above " + std::to_string(kMaxAmbient));
  }
  // Graded order: the monomials of a lower degree are a prefix.
  std::vector<int> current;
  for (int d = 0; d <= degree; ++d) {
    collect_monomials(vars, d, 0, current, monomials_);
    if (monomials_.size() > kMaxMonomials) {
      throw ContractViolation("gauge: more than " + std::to_string(kMaxMonomials) + " monomials");
    }
  }
  for (int i = 0; i < vars; ++i)
    for (int k = i + 1; k < vars; ++k) pairs_.emplace_back(i, k);
}

Vector GaugeParametrization::lift(const Vector& theta, const GaugeParametrization& lower) const {
  lower.check(theta);
  if (lower.base_.geometry().ambient_dim() != base_.geometry().ambient_dim()) {
    throw ContractViolation("gauge lift: ambient dimensions differ");
  }
  if (!lower.trivial_ && (trivial_ || lower.degree_ > degree_)) {
    throw ContractViolation("gauge lift: target family does not contain the source family");
  }
  Vector out = Vector::Zero(static_cast<Eigen::Index>(parameter_count()));
  out.head(theta.size()) = theta;
  return out;
}

void GaugeParametrization::check(const Vector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != parameter_count()) {
    throw ContractViolation("gauge: expected " + std::to_string(parameter_count()) +
                            " parameters, got " + std::to_string(theta.size()));
  }
}

template <typename M>
M GaugeParametrization::generator_as(const Vector& theta, const EmbeddedPoint& p) const {
  const auto& geo = base_.geometry();
  const int n = geo.ambient_dim();
  M a = M::Zero(n, n);
  if (trivial_) return a;
  const Vector& u = p.directions;
  double mono[kMaxMonomials];
  const std::size_t count = monomials_.size();
  for (std::size_t m = 0; m < count; ++m) {
    double value = 1.0;
    for (int v : monomials_[m]) value *= u(v);
    mono[m] = value;
  }
  // theta is pair-major within each monomial: theta[m * pair_count + s].
  const double* t = theta.data();
  const std::size_t pairs = pairs_.size();
  double entries[kMaxAmbient * (kMaxAmbient - 1) / 2] = {};
  for (std::size_t m = 0; m < count; ++m) {
    const double* tm = t + m * pairs;
    for (std::size_t s = 0; s < pairs; ++s) entries[s] += tm[s] * mono[m];
  }
  for (std::size_t s = 0; s < pairs; ++s) {
    const auto [i, k] = pairs_[s];
    a(i, k) = entries[s];
    a(k, i) = -entries[s];
  }
  // P B P with P = I - sum_f u_f u_f^T, applied blockwise on both sides.
  const auto& man = geo.manifold();
  for (std::size_t f = 0; f < man.factor_count(); ++f) {
    const int o = geo.ambient_offset(f), sz = geo.ambient_size(f);
    for (int c = 0; c < n; ++c) {
      double dot = 0.0;
      for (int r = 0; r < sz; ++r) dot += u(o + r) * a(o + r, c);
      for (int r = 0; r < sz; ++r) a(o + r, c) -= u(o + r) * dot;
    }
  }
  for (std::size_t f = 0; f < man.factor_count(); ++f) {
    const int o = geo.ambient_offset(f), sz = geo.ambient_size(f);
    for (int r = 0; r < n; ++r) {
      double dot = 0.0;
      for (int c = 0; c < sz; ++c) dot += a(r, o + c) * u(o + c);
      for (int c = 0; c < sz; ++c) a(r, o + c) -= dot * u(o + c);
    }
  }
  return a;
}

template <typename M>
M GaugeParametrization::rotation_as(const Vector& theta, const EmbeddedPoint& p) const {
  const M a = generator_as<M>(theta, p);
  const int n = static_cast<int>(a.rows());
  // Solve (I + A) Q = I - A by Gaussian elimination with partial pivoting;
  // I + A is invertible for skew A (eigenvalues 1 + i t).
  M lhs = M::Identity(n, n) + a;
  M q = M::Identity(n, n) - a;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(lhs(r, k)) > std::abs(lhs(piv, k))) piv = r;
    }
    if (piv != k) {
      lhs.row(k).swap(lhs.row(piv));
      q.row(k).swap(q.row(piv));
    }
    const double inv = 1.0 / lhs(k, k);
    for (int r = k + 1; r < n; ++r) {
      const double factor = lhs(r, k) * inv;
      if (factor == 0.0) continue;
      for (int c = k; c < n; ++c) lhs(r, c) -= factor * lhs(k, c);
      for (int c = 0; c < n; ++c) q(r, c) -= factor * q(k, c);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int c = 0; c < n; ++c) {
      double v = q(k, c);
      for (int r = k + 1; r < n; ++r) v -= lhs(k, r) * q(r, c);
      q(k, c) = v / lhs(k, k);
    }
  }
  return q;
}

namespace {
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, GaugeParametrization::kMaxAmbient,
                                  GaugeParametrization::kMaxAmbient>;
}

Matrix GaugeParametrization::generator(const Vector& theta, const EmbeddedPoint& p) const {
  check(theta);
  return generator_as<SmallMatrix>(theta, p);
}

Matrix GaugeParametrization::rotation(const Vector& theta, const EmbeddedPoint& p) const {
  check(theta);
  return rotation_as<SmallMatrix>(theta, p);
}

Matrix GaugeParametrization::structure(const Vector& theta, const EmbeddedPoint& p) const {
  if (trivial_) return base_.at(p);
  const SmallMatrix q = rotation_as<SmallMatrix>(theta, p);
  const SmallMatrix j0 = base_.at(p);
  const SmallMatrix qj = q.lazyProduct(j0);
  return qj.lazyProduct(q.transpose());
}

ACSField GaugeParametrization::field(Vector theta) const {
  check(theta);
  auto self = std::make_shared<const GaugeParametrization>(*this);
  return {base_.geometry_ptr(),
          [self, theta = std::move(theta)](const EmbeddedPoint& p) { return self->structure(theta, p); },
          base_.domain()};
}

}  // namespace oacs
