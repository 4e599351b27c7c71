#include "oacs/embedded.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "oacs/random.hpp"

namespace oacs {

EmbeddedProduct::EmbeddedProduct(ProductManifold manifold) : manifold_(std::move(manifold)) {
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    ambient_offsets_.push_back(ambient_dim_);
    ambient_dim_ += manifold_.dim(a) + 1;
  }
}

Vector EmbeddedProduct::position(const EmbeddedPoint& p) const {
  Vector x = p.directions;
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    x.segment(ambient_offset(a), ambient_size(a)) *= radius(a);
  }
  return x;
}

EmbeddedPoint EmbeddedProduct::project(const Eigen::Ref<const Vector>& ambient) const {
  if (ambient.size() != ambient_dim_) throw ContractViolation("project: wrong ambient length");
  EmbeddedPoint p{ambient};
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    auto part = p.directions.segment(ambient_offset(a), ambient_size(a));
    const double norm = part.norm();
    if (!(norm > 1e-12 * radius(a))) throw DegenerateInput("project: factor part at the origin");
    part /= norm;
  }
  return p;
}

EmbeddedPoint EmbeddedProduct::point_from_directions(const Eigen::Ref<const Vector>& directions) const {
  if (directions.size() != ambient_dim_) {
    throw ContractViolation("point_from_directions: wrong ambient length");
  }
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    if (std::abs(directions.segment(ambient_offset(a), ambient_size(a)).norm() - 1.0) > 1e-10) {
      throw ContractViolation("point_from_directions: factor direction is not a unit vector");
    }
  }
  return {directions};
}

Matrix EmbeddedProduct::tangent_projector(const EmbeddedPoint& p) const {
  Matrix proj = Matrix::Identity(ambient_dim_, ambient_dim_);
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    const int o = ambient_offset(a), s = ambient_size(a);
    const auto u = p.directions.segment(o, s);
    proj.block(o, o, s, s) -= u * u.transpose();
  }
  return proj;
}

Vector EmbeddedProduct::project_tangent(const EmbeddedPoint& p,
                                        const Eigen::Ref<const Vector>& v) const {
  Vector out = v;
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    const int o = ambient_offset(a), s = ambient_size(a);
    const auto u = p.directions.segment(o, s);
    out.segment(o, s) -= u.dot(v.segment(o, s)) * u;
  }
  return out;
}

Matrix EmbeddedProduct::tangent_basis(const EmbeddedPoint& p) const {
  Matrix basis = Matrix::Zero(ambient_dim_, manifold_.total_dim());
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    const int o = ambient_offset(a), s = ambient_size(a);
    const Vector u = p.directions.segment(o, s);
    // Householder reflection sending u to a multiple of e0; its remaining
    // columns span u^perp.
    Vector w = u;
    w(0) += (u(0) >= 0.0 ? 1.0 : -1.0);
    const Matrix h = Matrix::Identity(s, s) - 2.0 * w * w.transpose() / w.squaredNorm();
    basis.block(o, manifold_.offset(a), s, s - 1) = h.rightCols(s - 1);
  }
  return basis;
}

double EmbeddedProduct::normal_component(const EmbeddedPoint& p,
                                         const Eigen::Ref<const Vector>& v) const {
  double worst = 0.0;
  for (std::size_t a = 0; a < manifold_.factor_count(); ++a) {
    const int o = ambient_offset(a), s = ambient_size(a);
    worst = std::max(worst, std::abs(p.directions.segment(o, s).dot(v.segment(o, s))));
  }
  return worst;
}

std::vector<Vector> fibonacci_sphere_points(int n) {
  std::vector<Vector> pts;
  pts.reserve(n);
  const double golden = std::numbers::phi;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * std::numbers::pi * i / (golden * golden);
    pts.push_back(Vector{{rho * std::cos(phi), rho * std::sin(phi), z}});
  }
  return pts;
}

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                           53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<Vector> halton_sphere_points(int dim, int n, std::uint64_t seed, int prime_offset) {
  const int ambient = dim + 1;
  const int uniforms = 2 * ((ambient + 1) / 2);
  if (prime_offset + uniforms > static_cast<int>(std::size(kPrimes))) {
    throw ContractViolation("halton_sphere_points: dimension too large");
  }
  Rng rng(seed);
  std::vector<double> shift(uniforms);
  for (auto& s : shift) s = rng.uniform();

  std::vector<Vector> pts;
  pts.reserve(n);
  std::vector<double> u(uniforms);
  for (int i = 1; pts.size() < static_cast<std::size_t>(n); ++i) {
    for (int k = 0; k < uniforms; ++k) {
      const double h = radical_inverse(static_cast<std::uint64_t>(i), kPrimes[prime_offset + k]) + shift[k];
      u[k] = h - std::floor(h);
    }
    Vector g(ambient);
    for (int k = 0; k < ambient; ++k) {
      const double u1 = std::max(u[2 * (k / 2)], 1e-300);
      const double u2 = u[2 * (k / 2) + 1];
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double t = 2.0 * std::numbers::pi * u2;
      g(k) = (k % 2 == 0) ? r * std::cos(t) : r * std::sin(t);
    }
    const double norm = g.norm();
    if (norm < 1e-12) continue;
    pts.push_back(g / norm);
  }
  return pts;
}

std::vector<EmbeddedPoint> sample_points(const EmbeddedProduct& geometry, int n, std::uint64_t seed,
                                         const std::function<bool(const EmbeddedPoint&)>& domain) {
  if (n < 1) throw ContractViolation("sample_points: n >= 1");
  const auto& man = geometry.manifold();
  std::vector<EmbeddedPoint> out;
  out.reserve(n);
  constexpr int kMaxRounds = 64;
  for (int round = 0; round < kMaxRounds && static_cast<int>(out.size()) < n; ++round) {
    std::vector<std::vector<Vector>> per_factor(man.factor_count());
    int prime_offset = 0;
    for (std::size_t a = 0; a < man.factor_count(); ++a) {
      const std::uint64_t s = derive_seed(seed, 1000 * static_cast<std::uint64_t>(round) + a);
      if (man.dim(a) == 2) {
        auto pts = fibonacci_sphere_points(n);
        if (round > 0) {
          Rng rng(s);
          const Matrix rot = random_orthogonal(3, rng);
          for (auto& p : pts) p = rot * p;
        }
        per_factor[a] = std::move(pts);
      } else {
        const int uniforms = 2 * ((man.dim(a) + 2) / 2);
        per_factor[a] = halton_sphere_points(man.dim(a), n, s, prime_offset);
        prime_offset += uniforms;
      }
    }
    for (int i = 0; i < n && static_cast<int>(out.size()) < n; ++i) {
      Vector dirs(geometry.ambient_dim());
      for (std::size_t a = 0; a < man.factor_count(); ++a) {
        dirs.segment(geometry.ambient_offset(a), geometry.ambient_size(a)) = per_factor[a][i];
      }
      EmbeddedPoint p{std::move(dirs)};
      if (!domain || domain(p)) out.push_back(std::move(p));
    }
  }
  if (static_cast<int>(out.size()) < n) {
    throw DegenerateInput("sample_points: domain rejects too many candidates");
  }
  return out;
}

std::vector<EmbeddedPoint> load_points(std::istream& in, const EmbeddedProduct& geometry) {
  std::vector<EmbeddedPoint> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> values;
    double v;
    while (ls >> v) values.push_back(v);
    if (!ls.eof()) throw ContractViolation("load_points: bad number on line " + std::to_string(lineno));
    if (values.empty()) continue;
    if (static_cast<int>(values.size()) != geometry.ambient_dim()) {
      throw ContractViolation("load_points: line " + std::to_string(lineno) + " has " +
                              std::to_string(values.size()) + " coordinates, expected " +
                              std::to_string(geometry.ambient_dim()));
    }
    const Vector x = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    for (std::size_t a = 0; a < geometry.manifold().factor_count(); ++a) {
      const double r = geometry.factor_part(x, a).norm();
      if (std::abs(r - geometry.radius(a)) > 1e-6 * geometry.radius(a)) {
        throw ContractViolation("load_points: line " + std::to_string(lineno) +
                                " is off the sphere of factor " + std::to_string(a + 1));
      }
    }
    out.push_back(geometry.project(x));
  }
  return out;
}

void save_points(std::ostream& out, const EmbeddedProduct& geometry,
                 const std::vector<EmbeddedPoint>& points) {
  const auto old = out.precision(17);
  for (const auto& p : points) {
    const Vector x = geometry.position(p);
    for (Eigen::Index k = 0; k < x.size(); ++k) out << (k ? " " : "") << x(k);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace oacs
