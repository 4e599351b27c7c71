#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oacs/gauge.hpp"
#include "oacs/nijenhuis.hpp"
#include "oacs/octonion.hpp"
#include "oacs/random.hpp"
#include "oacs/search.hpp"

using namespace oacs;

namespace {

Matrix random_skew(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = rng.gaussian();
  return m - m.transpose();
}

Vector imaginary_cross(const Vector& a, const Vector& b) {
  return imaginary_product(Imaginary7(a), Imaginary7(b));
}

}  // namespace

TEST(LieBracket, RotationFieldsMatchCommutator) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(4, 0.5)}));
  Rng rng(3);
  const Matrix a = random_skew(5, rng), b = random_skew(5, rng);
  const auto x = rotation_field(geo, 1, a), y = rotation_field(geo, 1, b);
  for (const auto& p : sample_points(geo, 20, 9)) {
    const Vector pos = geo.position(p);
    Vector expected = Vector::Zero(geo.ambient_dim());
    expected.segment(3, 5) = -(a * b - b * a) * pos.segment(3, 5);
    EXPECT_LE((lie_bracket_fd(x, y, p) - expected).norm(), 1e-7);
  }
}

TEST(LieBracket, AxisRotationsOnS2) {
  // X = a1 x u, Y = a2 x u  =>  [X,Y] = -(a1 x a2) x u.
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0)}));
  const Vector a1{{0.3, -1.0, 0.2}}, a2{{1.1, 0.4, -0.7}};
  auto cross = [](const Vector& a) {
    Matrix m(3, 3);
    m << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
    return m;
  };
  const auto x = rotation_field(geo, 0, cross(a1)), y = rotation_field(geo, 0, cross(a2));
  const Vector axis = -Eigen::Vector3d(a1(0), a1(1), a1(2)).cross(Eigen::Vector3d(a2(0), a2(1), a2(2)));
  for (const auto& p : sample_points(geo, 10, 2)) {
    const Vector expected = cross(axis) * p.directions;
    EXPECT_LE((lie_bracket_fd(x, y, p) - expected).norm(), 1e-8);
  }
}

TEST(LieBracket, SecondOrderConvergence) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(6, 2.0)}));
  Rng rng(11);
  const Matrix a = random_skew(7, rng), b = random_skew(7, rng);
  const auto x = rotation_field(geo, 0, a), y = rotation_field(geo, 0, b);
  const auto p = sample_points(geo, 1, 5).front();
  const Vector exact = -(a * b - b * a) * geo.position(p);
  const double e1 = (lie_bracket_fd(x, y, p, 1e-2) - exact).norm();
  const double e2 = (lie_bracket_fd(x, y, p, 5e-3) - exact).norm();
  EXPECT_GT(e1, 1e-8);
  EXPECT_GE(e1 / e2, 3.5);
  EXPECT_LE(e1 / e2, 4.5);
}

TEST(LieBracket, AlgebraicProperties) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(4, 1.0)}));
  Rng rng(4);
  const auto x = projected_constant_field(geo, rng.gaussian_vector(8));
  const auto y = projected_constant_field(geo, rng.gaussian_vector(8));
  const auto z = projected_constant_field(geo, rng.gaussian_vector(8));
  for (const auto& p : sample_points(geo, 5, 6)) {
    const Vector xy = lie_bracket_fd(x, y, p);
    EXPECT_LE((xy + lie_bracket_fd(y, x, p)).norm(), 1e-12);
    EXPECT_LE(lie_bracket_fd(x, x, p).norm(), 1e-12);
    const Vector lin = lie_bracket_fd(sum_field(x, z), y, p);
    EXPECT_LE((lin - xy - lie_bracket_fd(z, y, p)).norm(), 1e-8);
    EXPECT_LE(geo.normal_component(p, xy), 1e-12);
  }
}

TEST(LieBracket, StepOutOfRange) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0)}));
  const auto x = projected_constant_field(geo, Vector::Unit(3, 0));
  const auto p = sample_points(geo, 1, 1).front();
  EXPECT_THROW(lie_bracket_fd(x, x, p, 0.0), StepSizeError);
  EXPECT_THROW(lie_bracket_fd(x, x, p, 0.5), StepSizeError);
  EXPECT_THROW(check_fd_step(std::nan("")), StepSizeError);
  EXPECT_NO_THROW(check_fd_step(1e-5));
}

TEST(Nijenhuis, CanonicalS2VanishesAndIsValid) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0)}));
  const auto j = canonical_s2_field(geo);
  const auto pts = sample_points(geo, 200, 1);
  EXPECT_LE(nijenhuis_energy(j, pts, 1, 1), 1e-10);
  for (const auto& p : pts) EXPECT_TRUE(validate_field_at(j, p).passed());
}

TEST(Nijenhuis, OctonionicMatchesClosedForm) {
  // Tangent X, Y at u on S^6(1/r^2), J v = u x v:
  //   N(X,Y) = (1/r) [ (u x X) x Y - (u x Y) x X - 2 u x (X x Y) ]   (tangent part)
  const EmbeddedProduct geo(ProductManifold({SphereFactor(6, 0.25)}));
  const auto j = octonionic_s6_field(geo);
  const double r = geo.radius(0);
  Rng rng(8);
  for (const auto& p : sample_points(geo, 20, 3)) {
    const Vector u = p.directions;
    const Vector vx = geo.project_tangent(p, rng.gaussian_vector(7));
    const Vector vy = geo.project_tangent(p, rng.gaussian_vector(7));
    const auto s = nijenhuis(j, projected_constant_field(geo, vx), projected_constant_field(geo, vy), p);
    Vector expected = imaginary_cross(imaginary_cross(u, vx), vy) - imaginary_cross(imaginary_cross(u, vy), vx) -
                      2.0 * imaginary_cross(u, imaginary_cross(vx, vy));
    expected = geo.project_tangent(p, expected) / r;
    EXPECT_LE((s.value - expected).norm(), 1e-6 * (1.0 + expected.norm()));
    EXPECT_GT(s.norm, 1e-3);
  }
}

TEST(Nijenhuis, AntiInvariantUnderJ) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(6, 1.0)}));
  const auto j = octonionic_s6_field(geo);
  Rng rng(12);
  const auto x = projected_constant_field(geo, rng.gaussian_vector(7));
  const auto y = projected_constant_field(geo, rng.gaussian_vector(7));
  for (const auto& p : sample_points(geo, 5, 4)) {
    const Vector n = nijenhuis(j, x, y, p).value;
    const Vector nj = nijenhuis(j, apply_field(j, x), apply_field(j, y), p).value;
    const Vector nxj = nijenhuis(j, x, apply_field(j, y), p).value;
    EXPECT_LE((nj + n).norm(), 1e-6);
    EXPECT_LE((nxj + j.at(p) * n).norm(), 1e-6);
  }
}

TEST(Nijenhuis, Tensoriality) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(6, 1.0)}));
  const auto j = product_field(geo, {s2_rotation_structure(), octonionic_structure()});
  for (const auto& p : sample_points(geo, 5, 2)) {
    const auto r = nijenhuis_tensoriality_check(j, p, 17);
    EXPECT_TRUE(r.passed());
    ASSERT_TRUE(r.find("|N(X,Y)|").has_value());
    EXPECT_GT(r.find("|N(X,Y)|")->computed, 1e-3);
  }
}

TEST(Nijenhuis, S4StructuresIntegrableAndNot) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(4, 1.0)}));
  const auto stereo = product_field(geo, {s4_stereographic_structure()});
  const auto chart = product_field(geo, {s4_chart_structure()});
  const auto ps = sample_points(geo, 50, 1, stereo.domain());
  const auto pc = sample_points(geo, 50, 1, chart.domain());
  EXPECT_LE(nijenhuis_energy(stereo, ps, 2, 1), 1e-10);
  EXPECT_GT(nijenhuis_energy(chart, pc, 2, 1), 0.1);
  for (const auto& p : pc) EXPECT_TRUE(validate_field_at(chart, p).passed());
  for (const auto& p : ps) EXPECT_TRUE(validate_field_at(stereo, p).passed());
}

TEST(Nijenhuis, RestrictionToSixSphereFactor) {
  const ProductManifold m({SphereFactor(2, 1.0), SphereFactor(6, 2.0)});
  const EmbeddedProduct geo(m);
  const auto j = product_field(geo, {s2_rotation_structure(), octonionic_structure()});
  const auto standalone = octonionic_s6_field(EmbeddedProduct(ProductManifold({SphereFactor(6, 2.0)})));
  const auto r = restriction_check(j, 1, standalone, sample_points(geo, 30, 5), 3);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.max_deviation("restriction"), 2e-6);
}

TEST(Nijenhuis, EnergyIsDeterministicAndSeedStable) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(6, 1.0)}));
  const auto j = octonionic_s6_field(geo);
  const auto pts = sample_points(geo, 100, 1);
  EXPECT_EQ(nijenhuis_energy(j, pts, 1, 5), nijenhuis_energy(j, pts, 1, 5));
  const auto b = nijenhuis_energy_breakdown(j, pts, 1, 5);
  EXPECT_EQ(b.point_means.size(), pts.size());
  double mean = 0.0;
  for (double v : b.point_means) mean += v;
  EXPECT_NEAR(mean / pts.size(), b.energy, 1e-12 * b.energy);
}

TEST(Fields, ProductFieldRejectsWrongDimensions) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(4, 1.0)}));
  EXPECT_THROW(product_field(geo, {s2_rotation_structure(), octonionic_structure()}), InvalidManifold);
  EXPECT_THROW(product_field(geo, {s2_rotation_structure()}), InvalidManifold);
  EXPECT_THROW(octonionic_s6_field(geo), InvalidManifold);
  EXPECT_THROW(canonical_s2_field(geo), InvalidManifold);
}

TEST(Fields, ValidateRejectsBrokenField) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0)}));
  const ACSField bad(geo, [](const EmbeddedPoint&) { return Matrix(Matrix::Identity(3, 3)); });
  EXPECT_FALSE(validate_field_at(bad, sample_points(geo, 1, 1).front()).passed());
}

TEST(Points, SaveLoadRoundTrip) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 4.0), SphereFactor(4, 1.0)}));
  const auto pts = sample_points(geo, 25, 3);
  std::stringstream ss;
  save_points(ss, geo, pts);
  const auto back = load_points(ss, geo);
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_LE((back[i].directions - pts[i].directions).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Points, LoadRejectsMalformedLines) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0)}));
  std::istringstream short_line("1 0\n");
  EXPECT_THROW(load_points(short_line, geo), ContractViolation);
  std::istringstream off_sphere("2 0 0\n");
  EXPECT_THROW(load_points(off_sphere, geo), ContractViolation);
  std::istringstream junk("1 0 x\n");
  EXPECT_THROW(load_points(junk, geo), ContractViolation);
  std::istringstream ok("# comment\n0 0 1  # north\n\n");
  EXPECT_EQ(load_points(ok, geo).size(), 1u);
}

TEST(Points, SamplingIsSeededAndOnTheManifold) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(6, 1.0)}));
  const auto a = sample_points(geo, 30, 7), b = sample_points(geo, 30, 7), c = sample_points(geo, 30, 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].directions, b[i].directions);
    EXPECT_NEAR(a[i].directions.head(3).norm(), 1.0, 1e-14);
    EXPECT_NEAR(a[i].directions.tail(7).norm(), 1.0, 1e-14);
  }
  EXPECT_NE(a[3].directions.tail(7), c[3].directions.tail(7));
}

TEST(Gauge, EnergyIsContinuousInTheta) {
  const EmbeddedProduct geo(ProductManifold({SphereFactor(2, 1.0), SphereFactor(4, 1.0)}));
  const GaugeParametrization family(corollary_b_base_field(geo), 1);
  const auto pts = sample_points(geo, 20, 1, family.base().domain());
  Rng rng(2);
  const Vector dir = rng.gaussian_vector(family.parameter_count());
  const double e0 = nijenhuis_energy(family.field(Vector::Zero(family.parameter_count())), pts, 1, 1);
  EXPECT_NEAR(e0, nijenhuis_energy(family.base(), pts, 1, 1), 1e-14);
  const double e1 = nijenhuis_energy(family.field(1e-4 * dir), pts, 1, 1);
  const double e2 = nijenhuis_energy(family.field(2e-4 * dir), pts, 1, 1);
  EXPECT_LT(std::abs(e1 - e0), 1e-1 * e0);
  // Locally linear: the second increment matches the first to first order.
  EXPECT_NEAR(e2 - e1, e1 - e0, 0.05 * std::abs(e1 - e0) + 1e-9);
}
