#include "oacs/nijenhuis.hpp"

#include <array>
#include <cmath>
#include <string>

#include "oacs/random.hpp"

namespace oacs {

void check_fd_step(double h) {
  if (!(h >= kMinFdStep && h <= kMaxFdStep)) {
    throw StepSizeError("finite-difference step " + std::to_string(h) + " outside [" +
                        std::to_string(kMinFdStep) + ", " + std::to_string(kMaxFdStep) + "]");
  }
}

Vector lie_bracket_fd(const TangentField& x, const TangentField& y, const EmbeddedPoint& p,
                      double h) {
  check_fd_step(h);
  const auto& geo = x.geometry();
  const Vector pos = geo.position(p);
  const Vector xp = x.at(p), yp = y.at(p);
  const Vector dy_x = (y.extended(pos + h * xp) - y.extended(pos - h * xp)) / (2.0 * h);
  const Vector dx_y = (x.extended(pos + h * yp) - x.extended(pos - h * yp)) / (2.0 * h);
  return geo.project_tangent(p, dy_x - dx_y);
}

namespace {

struct StencilValues {
  Vector x, y, jx, jy;
};

}  // namespace

NijenhuisSample nijenhuis(const ACSField& j, const TangentField& x, const TangentField& y,
                          const EmbeddedPoint& p, double h) {
  check_fd_step(h);
  const auto& geo = x.geometry();
  const Vector pos = geo.position(p);
  const Matrix jp = j.at(p);
  const Vector xp = x.at(p), yp = y.at(p);
  const Vector jxp = jp * xp, jyp = jp * yp;

  enum Dir { kX = 0, kY, kJX, kJY };
  const std::array<const Vector*, 4> dirs{&xp, &yp, &jxp, &jyp};
  // stencil[d][0] at pos + h d, stencil[d][1] at pos - h d
  std::array<std::array<StencilValues, 2>, 4> stencil;
  for (int d = 0; d < 4; ++d) {
    for (int s = 0; s < 2; ++s) {
      const Vector q = s == 0 ? Vector(pos + h * *dirs[d]) : Vector(pos - h * *dirs[d]);
      const EmbeddedPoint pq = geo.project(q);
      const Matrix jq = j.at(pq);
      auto& v = stencil[d][s];
      v.x = x.at(pq);
      v.y = y.at(pq);
      v.jx = jq * v.x;
      v.jy = jq * v.y;
    }
  }
  auto deriv = [&](Dir d, Vector StencilValues::*f) {
    return Vector((stencil[d][0].*f - stencil[d][1].*f) / (2.0 * h));
  };
  auto bracket = [&](Dir a_dir, Vector StencilValues::*a, Dir b_dir, Vector StencilValues::*b) {
    // [A,B] = D_A B - D_B A
    return geo.project_tangent(p, deriv(a_dir, b) - deriv(b_dir, a));
  };

  const Vector b_jxjy = bracket(kJX, &StencilValues::jx, kJY, &StencilValues::jy);
  const Vector b_xy = bracket(kX, &StencilValues::x, kY, &StencilValues::y);
  const Vector b_jxy = bracket(kJX, &StencilValues::jx, kY, &StencilValues::y);
  const Vector b_xjy = bracket(kX, &StencilValues::x, kJY, &StencilValues::jy);

  NijenhuisSample out;
  out.point = p;
  out.x = xp;
  out.y = yp;
  out.value = b_jxjy - b_xy - jp * b_jxy - jp * b_xjy;
  out.norm = out.value.norm();
  return out;
}

ScalarFunction seeded_polynomial(int ambient_dim, std::uint64_t seed) {
  Rng rng(seed);
  const double c0 = 1.0 + 0.5 * rng.gaussian();
  const Vector lin = 0.5 * rng.gaussian_vector(ambient_dim);
  const Matrix quad = 0.25 * rng.gaussian_matrix(ambient_dim, ambient_dim);
  return [c0, lin, quad](const Vector& q) { return c0 + lin.dot(q) + q.dot(quad * q); };
}

AuditReport nijenhuis_tensoriality_check(const ACSField& j, const EmbeddedPoint& p,
                                         std::uint64_t seed, double h, double tol) {
  return nijenhuis_tensoriality_check(
      j, p, seeded_polynomial(j.geometry().ambient_dim(), derive_seed(seed, 7)), seed, h, tol);
}

AuditReport nijenhuis_tensoriality_check(const ACSField& j, const EmbeddedPoint& p,
                                         const ScalarFunction& f, std::uint64_t seed, double h,
                                         double tol) {
  const auto& geo = j.geometry();
  Rng rng(seed);
  const TangentField x = projected_constant_field(geo, rng.gaussian_vector(geo.ambient_dim()));
  const TangentField y = projected_constant_field(geo, rng.gaussian_vector(geo.ambient_dim()));
  const double fp = f(geo.position(p));
  const Vector nxy = nijenhuis(j, x, y, p, h).value;
  const Vector nfx = nijenhuis(j, scaled_field(f, x), y, p, h).value;
  const Vector nfy = nijenhuis(j, x, scaled_field(f, y), p, h).value;

  AuditReport report("Nijenhuis tensoriality on " + geo.manifold().describe());
  report.expect("N(fX,Y)-f(p)N(X,Y)", (nfx - fp * nxy).norm(), 0.0, tol, "N(fX,Y) = f N(X,Y)");
  report.expect("N(X,fY)-f(p)N(X,Y)", (nfy - fp * nxy).norm(), 0.0, tol, "N(X,fY) = f N(X,Y)");
  report.record("|N(X,Y)|", nxy.norm(), "N(X,Y) = [JX,JY]-[X,Y]-J[JX,Y]-J[X,JY]");
  report.record("f(p)", fp, "test function value");
  return report;
}

std::vector<std::pair<Vector, Vector>> tangent_frame_pairs(const EmbeddedProduct& geometry,
                                                           const EmbeddedPoint& p, int count,
                                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(count);
  while (static_cast<int>(pairs.size()) < count) {
    Vector v = geometry.project_tangent(p, rng.gaussian_vector(geometry.ambient_dim()));
    Vector w = geometry.project_tangent(p, rng.gaussian_vector(geometry.ambient_dim()));
    if (v.norm() < 1e-8) continue;
    v.normalize();
    w -= w.dot(v) * v;
    if (w.norm() < 1e-8) continue;
    w.normalize();
    pairs.emplace_back(std::move(v), std::move(w));
  }
  return pairs;
}

EnergyBreakdown nijenhuis_energy_breakdown(const ACSField& j, const std::vector<EmbeddedPoint>& points,
                                           int frame_pairs, std::uint64_t seed, double h) {
  if (points.empty()) throw ContractViolation("nijenhuis_energy: no sample points");
  if (frame_pairs < 1) throw ContractViolation("nijenhuis_energy: frame_pairs >= 1");
  const auto& geo = j.geometry();
  EnergyBreakdown out;
  out.point_means.reserve(points.size());
  double total = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto pairs = tangent_frame_pairs(geo, points[k], frame_pairs, derive_seed(seed, k));
    double point_sum = 0.0;
    for (const auto& [v, w] : pairs) {
      const auto n = nijenhuis(j, projected_constant_field(geo, v), projected_constant_field(geo, w),
                               points[k], h);
      point_sum += n.norm * n.norm;
    }
    out.point_means.push_back(point_sum / frame_pairs);
    total += point_sum;
  }
  out.energy = total / (static_cast<double>(points.size()) * frame_pairs);
  return out;
}

double nijenhuis_energy(const ACSField& j, const std::vector<EmbeddedPoint>& points, int frame_pairs,
                        std::uint64_t seed, double h) {
  return nijenhuis_energy_breakdown(j, points, frame_pairs, seed, h).energy;
}

AuditReport restriction_check(const ACSField& product, std::size_t factor, const ACSField& standalone,
                              const std::vector<EmbeddedPoint>& points, std::uint64_t seed, double h,
                              double tol) {
  const auto& geo = product.geometry();
  const auto& alone = standalone.geometry();
  if (alone.manifold().factor_count() != 1 ||
      !(alone.manifold().factor(0) == geo.manifold().factor(factor))) {
    throw InvalidManifold("restriction_check: standalone field must live on factor " +
                          std::to_string(factor + 1) + " alone");
  }
  const int o = geo.ambient_offset(factor), s = geo.ambient_size(factor);
  AuditReport report("restriction of N to factor " + std::to_string(factor + 1) + " of " +
                     geo.manifold().describe());
  double worst = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    Rng rng(derive_seed(seed, k));
    const Vector v = rng.gaussian_vector(s), w = rng.gaussian_vector(s);
    Vector vv = Vector::Zero(geo.ambient_dim()), ww = Vector::Zero(geo.ambient_dim());
    vv.segment(o, s) = v;
    ww.segment(o, s) = w;
    const auto np = nijenhuis(product, projected_constant_field(geo, vv), projected_constant_field(geo, ww),
                              points[k], h);
    const EmbeddedPoint q{points[k].directions.segment(o, s)};
    const auto ns = nijenhuis(standalone, projected_constant_field(alone, v), projected_constant_field(alone, w),
                              q, h);
    Vector embedded = Vector::Zero(geo.ambient_dim());
    embedded.segment(o, s) = ns.value;
    worst = std::max(worst, (np.value - embedded).norm());
    report.record("|N|[point=" + std::to_string(k) + "]", np.norm, "product field");
  }
  report.expect("restriction_deviation", worst, 0.0, tol, "N(X',Y') on the product = N'(X',Y') on the factor");
  return report;
}

}  // namespace oacs
