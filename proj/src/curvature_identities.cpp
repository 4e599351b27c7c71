#include "oacs/curvature_identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "oacs/random.hpp"

namespace oacs {

namespace {

std::string indexed(const char* family, std::size_t a, std::size_t b, int i, int j, bool mixed) {
  std::ostringstream os;
  os << family << "[a=" << a + 1;
  if (mixed) os << ",b=" << b + 1;
  os << ",i=" << i + 1 << ",j=" << j + 1 << ']';
  return os.str();
}

Vector without_first_block(const ProductManifold& man, Vector v) {
  v.segment(man.offset(0), man.dim(0)).setZero();
  return v;
}

}  // namespace

double gray_combination(const CurvatureOracle& oracle, const OrthogonalACS& j,
                        const Eigen::Ref<const Vector>& w, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y, const Eigen::Ref<const Vector>& z) {
  const Vector jw = j(w), jx = j(x), jy = j(y), jz = j(z);
  const auto& r = oracle;
  return r(w, x, y, z) + r(jw, jx, jy, jz) - r(jw, jx, y, z) - r(jw, x, jy, z) -
         r(jw, x, y, jz) - r(w, jx, jy, z) - r(w, jx, y, jz) - r(w, x, jy, jz);
}

AuditReport audit_gray_cancellation(const CurvatureOracle& oracle, int sample_count,
                                    std::uint64_t seed, double tol) {
  if (sample_count < 1) throw ContractViolation("audit_gray_cancellation: sample_count >= 1");
  const auto& man = oracle.manifold();
  const int n = man.total_dim();
  double worst = 0.0, validity = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const auto j = random_orthogonal_acs(man, derive_seed(seed, 2 * static_cast<std::uint64_t>(s)));
    for (const auto& c : validate_acs(j, tol).checks()) validity = std::max(validity, c.computed);
    Rng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(s) + 1));
    const Vector w = rng.gaussian_vector(n).normalized();
    const Vector x = rng.gaussian_vector(n).normalized();
    const Vector y = rng.gaussian_vector(n).normalized();
    const Vector z = rng.gaussian_vector(n).normalized();
    worst = std::max(worst, std::abs(gray_combination(oracle, j, w, x, y, z)));
  }
  AuditReport report("Gray combination on " + man.describe());
  report.expect("acs_validity", validity, 0.0, tol, "J^T J = I, J^2 = -I");
  const char* anchor = "constant curvature => gray(W,X,Y,Z) = 0 for orthogonal J";
  if (man.factor_count() == 1) {
    report.expect("max|gray|", worst, 0.0, tol, anchor);
  } else {
    report.compare("max|gray|", worst, 0.0, tol, anchor);
  }
  report.record("samples", sample_count, "sample count");
  return report;
}

SplittingDefectResult splitting_defect(const CurvatureOracle& oracle, const OrthogonalACS& j,
                                       const Eigen::Ref<const Vector>& x,
                                       const Eigen::Ref<const Vector>& y) {
  const auto& man = oracle.manifold();
  if (man.dim(0) != 2) {
    throw InvalidManifold("splitting_defect: first factor must be a 2-sphere");
  }
  man.check_size(x.size());
  man.check_size(y.size());
  const double tol = kDefaultTolerances.acs;
  const bool in_block = without_first_block(man, x).norm() <= tol &&
                        without_first_block(man, y).norm() <= tol;
  const bool orthonormal = std::abs(x.squaredNorm() - 1.0) <= tol &&
                           std::abs(y.squaredNorm() - 1.0) <= tol && std::abs(x.dot(y)) <= tol;
  if (!in_block || !orthonormal) {
    throw ContractViolation(
        "splitting_defect: x, y must be an orthonormal pair tangent to the 2-sphere factor");
  }

  const double alpha = man.factor(0).curvature();
  const Vector jx = j(x), jy = j(y);
  const auto& r = oracle;

  SplittingDefectResult out;
  out.direct = gray_combination(oracle, j, x, y, x, y);
  out.grouped = r(x, y, x, y) + r(jx, jy, jx, jy) - 2.0 * r(jx, jy, x, y) - r(jx, y, jx, y) -
                2.0 * r(jx, y, x, jy) - r(x, jy, x, jy);
  out.c = jx.dot(y);
  const Vector jx2 = without_first_block(man, jx);
  const Vector jy2 = without_first_block(man, jy);
  out.r2_term = r(jx2, jy2, jx2, jy2);
  const double one_minus_c2 = 1.0 - out.c * out.c;
  out.closed_form = -alpha * one_minus_c2 * one_minus_c2 + out.r2_term;
  const double jx1 = man.block(jx, 0).squaredNorm();
  const double jy1 = man.block(jy, 0).squaredNorm();
  out.norm_product_form = -alpha * (1.0 - jx1 * jy1) + out.r2_term;
  return out;
}

SplittingDefectResult splitting_defect(const CurvatureOracle& oracle, const OrthogonalACS& j) {
  const auto& man = oracle.manifold();
  if (man.dim(0) != 2) {
    throw InvalidManifold("splitting_defect: first factor must be a 2-sphere");
  }
  return splitting_defect(oracle, j, man.frame_vector(0, 0), man.frame_vector(0, 1));
}

AuditReport audit_splitting_defect(const CurvatureOracle& oracle, int sample_count,
                                   std::uint64_t seed, double tol) {
  if (sample_count < 1) throw ContractViolation("audit_splitting_defect: sample_count >= 1");
  const auto& man = oracle.manifold();
  const double alpha = man.factor(0).curvature();

  double equivalence = 0.0, grouping = 0.0, positive_part = 0.0;
  double split_defect = 0.0, split_c = 0.0;
  double bound_violation = 0.0;   // direct <= -alpha (1-c^2)^2 + r2_term, r2_term <= 0
  double r2_positive = 0.0;
  double floor_violation = 0.0;   // c^2 <= 0.1  =>  direct <= -0.81 alpha
  double broad_violation = 0.0;   // 1 - c^2 > 0.1  =>  direct < -0.01 alpha
  double form_gap = 0.0;
  int floor_samples = 0, broad_samples = 0;

  for (int s = 0; s < sample_count; ++s) {
    const auto j = random_orthogonal_acs(man, derive_seed(seed, 2 * static_cast<std::uint64_t>(s)));
    const auto d = splitting_defect(oracle, j);
    equivalence = std::max(equivalence, std::abs(d.direct - d.closed_form));
    grouping = std::max(grouping, std::abs(d.direct - d.grouped));
    positive_part = std::max(positive_part, d.direct);
    r2_positive = std::max(r2_positive, d.r2_term);
    const double gap = 1.0 - d.c * d.c;
    bound_violation = std::max(bound_violation, d.direct + alpha * gap * gap);
    form_gap = std::max(form_gap, std::abs(d.norm_product_form - d.direct));
    if (d.c * d.c <= 0.1) {
      ++floor_samples;
      floor_violation = std::max(floor_violation, d.direct + 0.81 * alpha);
    }
    if (gap > 0.1) {
      ++broad_samples;
      broad_violation = std::max(broad_violation, d.direct + 0.01 * alpha);
    }

    const auto split =
        random_block_diagonal_acs(man, derive_seed(seed, 2 * static_cast<std::uint64_t>(s) + 1));
    const auto ds = splitting_defect(oracle, split);
    split_defect = std::max(split_defect, std::abs(ds.direct));
    split_c = std::max(split_c, std::abs(1.0 - ds.c * ds.c));
  }

  AuditReport report("splitting defect on " + man.describe());
  report.expect("direct_vs_closed_form", equivalence, 0.0, tol,
                "gray(x,y,x,y) = -alpha (1-c^2)^2 + R_2((Jx)_2,(Jy)_2,(Jx)_2,(Jy)_2)");
  report.expect("direct_vs_grouped_terms", grouping, 0.0, tol,
                "R(x,y,x,y)+R(Jx,Jy,Jx,Jy)-2R(Jx,Jy,x,y)-R(Jx,y,Jx,y)-2R(Jx,y,x,Jy)-R(x,Jy,x,Jy)");
  report.expect("direct_positive_part", std::max(0.0, positive_part), 0.0, 1e-12,
                "gray(x,y,x,y) <= 0");
  report.expect("r2_term_positive_part", std::max(0.0, r2_positive), 0.0, 1e-12,
                "R_2((Jx)_2,(Jy)_2,(Jx)_2,(Jy)_2) <= 0");
  report.expect("alpha_bound_violation", std::max(0.0, bound_violation), 0.0, tol,
                "gray(x,y,x,y) <= -alpha (1-c^2)^2");
  report.expect("floor_violation_c2_le_0.1", std::max(0.0, floor_violation), 0.0, tol,
                "c^2 <= 0.1 => gray(x,y,x,y) <= -0.81 alpha");
  report.expect("floor_violation_gap_gt_0.1", std::max(0.0, broad_violation), 0.0, tol,
                "1-c^2 > 0.1 => gray(x,y,x,y) < -0.01 alpha");
  report.expect("split_structure_defect", split_defect, 0.0, tol,
                "J(T S^2) = T S^2 => gray(x,y,x,y) = 0");
  report.expect("split_structure_c2", split_c, 0.0, tol, "J(T S^2) = T S^2 => c^2 = 1");
  report.record("norm_product_form_max_gap", form_gap,
                "-alpha(1-|(Jx)_1|^2|(Jy)_1|^2) + R_2 vs direct");
  report.record("samples", sample_count, "sample count");
  report.record("samples_c2_le_0.1", floor_samples, "sub-sample size");
  report.record("samples_gap_gt_0.1", broad_samples, "sub-sample size");
  return report;
}

double ricci_star_value(const CurvatureOracle& oracle, const OrthogonalACS& j,
                        const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y,
                        const std::optional<Matrix>& frame) {
  const int n = j.dim();
  const Vector jy = j(y);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vector ek = frame ? Vector(frame->col(k)) : Vector(Vector::Unit(n, k));
    sum += oracle(x, jy, ek, j(ek));
  }
  return -0.5 * sum;
}

RicciStarForm ricci_star(const CurvatureOracle& oracle, const OrthogonalACS& j,
                         const std::optional<Matrix>& frame) {
  const int n = j.dim();
  if (!(oracle.manifold() == j.manifold())) {
    throw ContractViolation("ricci_star: structure and curvature live on different manifolds");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m(i, k) = ricci_star_value(oracle, j, Vector::Unit(n, i), Vector::Unit(n, k), frame);
    }
  }
  return {std::move(m), j};
}

AuditReport ricci_star_identity_check(const RicciStarForm& form, int sample_count,
                                      std::uint64_t seed, double tol) {
  const int n = form.acs.dim();
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < std::max(sample_count, 1); ++s) {
    const Vector x = rng.gaussian_vector(n).normalized();
    const Vector y = rng.gaussian_vector(n).normalized();
    worst = std::max(worst, std::abs(form(x, y) - form(form.acs(y), form.acs(x))));
  }
  AuditReport report("Ricci * identity on " + form.manifold().describe());
  report.expect("rho*(X,Y)-rho*(JY,JX)", worst, 0.0, tol, "rho*(X,Y) = rho*(JY,JX)");
  report.record("samples", sample_count, "sample count");
  return report;
}

AuditReport audit_ricci_star_identity(const CurvatureOracle& oracle, int sample_count, std::uint64_t seed,
                                      double tol) {
  if (sample_count < 1) throw ContractViolation("audit_ricci_star_identity: sample_count >= 1");
  const auto& man = oracle.manifold();
  const int n = man.total_dim();
  double worst = 0.0, frame_gap = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const auto j = random_orthogonal_acs(man, derive_seed(seed, 2 * static_cast<std::uint64_t>(s)));
    Rng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(s) + 1));
    const Vector x = rng.gaussian_vector(n).normalized();
    const Vector y = rng.gaussian_vector(n).normalized();
    worst = std::max(worst, std::abs(ricci_star_value(oracle, j, x, y) - ricci_star_value(oracle, j, j(y), j(x))));
    if (s == 0) {
      const Matrix frame = random_orthogonal(n, rng);
      frame_gap = std::abs(ricci_star_value(oracle, j, x, y) - ricci_star_value(oracle, j, x, y, frame));
    }
  }
  AuditReport report("Ricci * identity on " + man.describe());
  report.expect("rho*(X,Y)-rho*(JY,JX)", worst, 0.0, tol, "rho*(X,Y) = rho*(JY,JX)");
  report.expect("frame_invariance", frame_gap, 0.0, tol, "trace independent of the orthonormal frame");
  report.record("samples", sample_count, "sample count");
  return report;
}

AuditReport audit_block_components(const CurvatureOracle& oracle, const OrthogonalACS& j,
                                   double tol) {
  const auto& man = oracle.manifold();
  if (!man.all_factors_have_dim(6)) {
    throw InvalidManifold("block component audit needs a product of 6-spheres");
  }
  AuditReport report("Ricci * components on " + man.describe());
  double family_max[6] = {0, 0, 0, 0, 0, 0};
  auto row = [&](int family, std::string name, double computed, double expected,
                 const char* anchor) {
    report.compare(std::move(name), computed, expected, tol, anchor);
    family_max[family] = std::max(family_max[family], std::abs(computed - expected));
  };

  const std::size_t t = man.factor_count();
  const auto& f = kBlockComponentFamilies;
  for (std::size_t a = 0; a < t; ++a) {
    const double beta = man.factor(a).curvature();
    for (int i = 0; i < 6; ++i) {
      const Vector ei = man.frame_vector(a, i);
      for (int k = 0; k < 6; ++k) {
        const Vector ek = man.frame_vector(a, k);
        row(0, indexed(f[0], a, a, i, k, false), ricci_star_value(oracle, j, ei, ek),
            i == k ? beta : 0.0, "rho*(e(a)_i,e(a)_j) = beta_a delta_ij");
        row(2, indexed(f[2], a, a, i, k, false), ricci_star_value(oracle, j, ei, j(ek)),
            beta * j.component(a, a, k, i), "rho*(e(a)_i,Je(a)_j) = beta_a J(a,a)_ji");
        row(4, indexed(f[4], a, a, i, k, false), ricci_star_value(oracle, j, j(ei), ek),
            beta * j.component(a, a, i, k), "rho*(Je(a)_i,e(a)_j) = beta_a J(a,a)_ij");
      }
    }
  }
  for (std::size_t a = 0; a < t; ++a) {
    const double beta = man.factor(a).curvature();
    for (std::size_t b = 0; b < t; ++b) {
      if (a == b) continue;
      for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 6; ++k) {
          const Vector eai = man.frame_vector(a, i);
          const Vector ebk = man.frame_vector(b, k);
          row(1, indexed(f[1], a, b, i, k, true), ricci_star_value(oracle, j, eai, ebk), 0.0,
              "rho*(e(a)_i,e(b)_j) = beta_a delta_ij delta_ab");
          row(3, indexed(f[3], a, b, i, k, true), ricci_star_value(oracle, j, eai, j(ebk)), 0.0,
              "rho*(e(a)_i,Je(b)_j) = -beta_a delta_ab J(a,b)_ij");
          // rho*(J e(b)_i, e(a)_j) against -beta_a J(a,b)_ij
          const Vector ebi = man.frame_vector(b, i);
          const Vector eak = man.frame_vector(a, k);
          row(5, indexed(f[5], a, b, i, k, true), ricci_star_value(oracle, j, j(ebi), eak),
              -beta * j.component(a, b, i, k), "rho*(Je(b)_i,e(a)_j) = -beta_a J(a,b)_ij");
        }
      }
    }
  }
  for (int fam = 0; fam < 6; ++fam) {
    const bool vacuous = (fam % 2 == 1) && t < 2;
    if (vacuous) continue;
    report.compare(std::string("max|") + f[fam] + "|", family_max[fam], 0.0, tol,
                   "family maximum deviation");
  }
  return report;
}

AuditReport audit_block_diagonal_components(const CurvatureOracle& oracle, int sample_count,
                                            std::uint64_t seed, double tol) {
  if (sample_count < 1) throw ContractViolation("audit_block_diagonal_components: sample_count >= 1");
  const auto& man = oracle.manifold();
  std::vector<double> worst(6, 0.0);
  std::vector<bool> present(6, false);
  for (int s = 0; s < sample_count; ++s) {
    const auto j = random_block_diagonal_acs(man, derive_seed(seed, static_cast<std::uint64_t>(s)));
    const auto sample = audit_block_components(oracle, j, tol);
    for (int fam = 0; fam < 6; ++fam) {
      if (const auto c = sample.find(std::string("max|") + kBlockComponentFamilies[fam] + "|")) {
        present[fam] = true;
        worst[fam] = std::max(worst[fam], c->computed);
      }
    }
  }
  AuditReport report("Ricci * components, block-diagonal J on " + man.describe());
  for (int fam = 0; fam < 6; ++fam) {
    if (!present[fam]) continue;
    report.expect(std::string("block_diagonal:max|") + kBlockComponentFamilies[fam] + "|", worst[fam], 0.0, tol,
                  "J(T M_a) = T M_a => closed-form component values");
  }
  report.record("samples", sample_count, "sample count");
  return report;
}

BlockSplittingProbe block_splitting_probe(const RicciStarForm& form) {
  BlockSplittingProbe out;
  out.symmetry_defect = (form.matrix - form.matrix.transpose()).cwiseAbs().maxCoeff();
  const auto& man = form.manifold();
  for (std::size_t a = 0; a < man.factor_count(); ++a) {
    for (std::size_t b = 0; b < man.factor_count(); ++b) {
      if (a == b) continue;
      out.off_block_mass = std::max(out.off_block_mass, form.acs.block(a, b).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

}  // namespace oacs
