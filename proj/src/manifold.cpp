#include "oacs/manifold.hpp"

#include <algorithm>
#include <sstream>

#include "oacs/random.hpp"

namespace oacs {

SphereFactor::SphereFactor(int dim, double curvature) : dim_(dim), curvature_(curvature) {
  if (dim < 2 || dim % 2 != 0) {
    throw InvalidManifold("sphere factor dimension must be even and >= 2, got " +
                          std::to_string(dim));
  }
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    throw InvalidManifold("sphere factor curvature must be positive and finite");
  }
}

ProductManifold::ProductManifold(std::vector<SphereFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidManifold("product manifold needs at least one factor");
  offsets_.reserve(factors_.size());
  for (const auto& f : factors_) {
    offsets_.push_back(total_dim_);
    total_dim_ += f.dim();
  }
}

const SphereFactor& ProductManifold::factor(std::size_t a) const {
  if (a >= factors_.size()) {
    throw ContractViolation("factor index " + std::to_string(a) + " out of range");
  }
  return factors_[a];
}

int ProductManifold::offset(std::size_t a) const {
  factor(a);
  return offsets_[a];
}

double ProductManifold::max_curvature() const {
  double k = 0.0;
  for (const auto& f : factors_) k = std::max(k, f.curvature());
  return k;
}

bool ProductManifold::all_factors_have_dim(int d) const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [d](const SphereFactor& f) { return f.dim() == d; });
}

FrameVector ProductManifold::embed(std::size_t a, const Eigen::Ref<const Vector>& local) const {
  if (local.size() != dim(a)) throw ContractViolation("embed: local vector has wrong length");
  FrameVector v = FrameVector::Zero(total_dim_);
  v.segment(offset(a), dim(a)) = local;
  return v;
}

FrameVector ProductManifold::frame_vector(std::size_t a, int i) const {
  if (i < 0 || i >= dim(a)) throw ContractViolation("frame index out of range");
  FrameVector v = FrameVector::Zero(total_dim_);
  v(offset(a) + i) = 1.0;
  return v;
}

std::string ProductManifold::describe() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    if (a) os << 'x';
    os << "S^" << factors_[a].dim() << '(' << factors_[a].curvature() << ')';
  }
  return os.str();
}

AuditReport curvature_symmetry_audit(const CurvatureOracle& oracle, int sample_count,
                                     std::uint64_t seed, double tol) {
  if (sample_count < 1) throw ContractViolation("curvature_symmetry_audit: sample_count >= 1");
  const int n = oracle.manifold().total_dim();
  Rng rng(seed);
  auto unit = [&] { return Vector(rng.gaussian_vector(n).normalized()); };

  double skew12 = 0, skew34 = 0, pair = 0, bianchi = 0, metric = 0;
  for (int s = 0; s < sample_count; ++s) {
    const Vector x = unit(), y = unit(), z = unit(), w = unit();
    const double rxyzw = oracle(x, y, z, w);
    skew12 = std::max(skew12, std::abs(rxyzw + oracle(y, x, z, w)));
    skew34 = std::max(skew34, std::abs(rxyzw + oracle(x, y, w, z)));
    pair = std::max(pair, std::abs(rxyzw - oracle(z, w, x, y)));
    bianchi = std::max(bianchi, std::abs(rxyzw + oracle(y, z, x, w) + oracle(z, x, y, w)));
    // <R(x,y)z,w> + <R(x,y)w,z>, evaluated factor by factor through the endomorphism.
    double skew_adj = 0.0;
    const auto& man = oracle.manifold();
    for (std::size_t a = 0; a < man.factor_count(); ++a) {
      const auto& f = man.factor(a);
      const Vector xa = man.block(x, a), ya = man.block(y, a), za = man.block(z, a),
                   wa = man.block(w, a);
      skew_adj += factor_curvature_endo(f, xa, ya, za).dot(wa) +
                  factor_curvature_endo(f, xa, ya, wa).dot(za);
    }
    metric = std::max(metric, std::abs(skew_adj));
  }

  const double scaled = tol * std::max(1.0, oracle.manifold().max_curvature());
  AuditReport report("curvature symmetries on " + oracle.manifold().describe());
  report.expect("antisymmetry_first_pair", skew12, 0.0, scaled, "R(x,y,z,w) = -R(y,x,z,w)");
  report.expect("antisymmetry_second_pair", skew34, 0.0, scaled, "R(x,y,z,w) = -R(x,y,w,z)");
  report.expect("pair_symmetry", pair, 0.0, scaled, "R(x,y,z,w) = R(z,w,x,y)");
  report.expect("first_bianchi", bianchi, 0.0, scaled,
                "R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0");
  report.expect("metric_skew_adjointness", metric, 0.0, scaled,
                "<R_(a)(x,y)z,w> + <R_(a)(x,y)w,z> = 0");
  report.record("samples", sample_count, "sample count");
  return report;
}

}  // namespace oacs
