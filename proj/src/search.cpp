#include "oacs/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "oacs/nijenhuis.hpp"
#include "oacs/random.hpp"

namespace oacs {

namespace {

void check_options(const SearchOptions& o) {
  if (o.restarts < 1) throw ContractViolation("search: restarts must be >= 1");
  if (o.budget < 1) throw ContractViolation("search: budget must be >= 1");
  if (o.frame_pairs < 1) throw ContractViolation("search: frame_pairs must be >= 1");
  if (o.max_initial_retries < 0) throw ContractViolation("search: max_initial_retries must be >= 0");
  check_fd_step(o.fd_step);
}

}  // namespace

SearchResult minimize_energy(const GaugeParametrization& family, const std::vector<EmbeddedPoint>& points,
                             const SearchOptions& options, std::uint64_t seed) {
  check_options(options);
  if (points.empty()) throw ContractViolation("minimize_energy: no sample points");

  const std::uint64_t energy_seed = derive_seed(seed, kEnergyStream);
  const auto n = static_cast<Eigen::Index>(family.parameter_count());
  // A stencil pushed onto a factor origin (only possible for non-finite or
  // huge fields) ranks like a non-finite value.
  auto energy = [&](const Vector& theta) {
    try {
      return nijenhuis_energy(family.field(theta), points, options.frame_pairs, energy_seed, options.fd_step);
    } catch (const DegenerateInput&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  SearchResult result;
  result.seed = seed;
  result.options = options;
  result.manifold = family.base().geometry().manifold().describe();
  result.degree = family.degree();
  result.parameter_count = family.parameter_count();
  result.point_count = points.size();
  result.best_energy = std::numeric_limits<double>::infinity();

  // A generator entry sums one coefficient per monomial; scaling by
  // 1/sqrt(#monomials) keeps its typical size independent of the degree.
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, family.monomial_count())));
  const double spread = options.initial_spread * scale;

  NelderMeadOptions nm;
  nm.budget = options.budget;
  nm.initial_step = options.initial_step * scale;

  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Vector start = Vector::Zero(n);
    if (r == 0 && options.warm_start) {
      if (options.warm_start->size() != n) throw ContractViolation("minimize_energy: warm start has the wrong size");
      start = *options.warm_start;
    }
    if (r > 0) start = spread * rng.gaussian_vector(n);
    int retries = 0;
    while (!std::isfinite(energy(start))) {
      if (++retries > options.max_initial_retries) {
        throw SearchError("minimize_energy: non-finite energy at every initial point of restart " +
                          std::to_string(r));
      }
      start = spread * rng.gaussian_vector(n);
    }
    // The first evaluation inside nelder_mead repeats the start; cheap
    // compared to a full run and keeps the optimizer self-contained.
    const auto run = nelder_mead(energy, start, nm);
    result.restart_energies.push_back(run.best_value);
    result.initial_energies.push_back(run.initial_value);
    result.evaluations.push_back(run.evaluations);
    if (run.best_value < result.best_energy) {
      result.best_energy = run.best_value;
      result.best_params = run.best_x;
      result.best_restart = r;
    }
  }
  return result;
}

ACSField corollary_b_base_field(const EmbeddedProduct& geometry) {
  const auto& man = geometry.manifold();
  if (man.factor_count() != 2 || man.dim(0) != 2 || man.dim(1) != 4) {
    throw InvalidManifold("corollary-b: manifold must be S^2(alpha) x S^4(beta), got " + man.describe());
  }
  return product_field(geometry, {s2_rotation_structure(), s4_chart_structure()});
}

ACSField s6_base_field(const EmbeddedProduct& geometry) {
  const auto& man = geometry.manifold();
  if (man.factor_count() != 1 || man.dim(0) != 6) {
    throw InvalidManifold("s6: manifold must be a single 6-sphere, got " + man.describe());
  }
  return product_field(geometry, {octonionic_structure()});
}

ACSField default_base_field(const EmbeddedProduct& geometry) {
  const auto& man = geometry.manifold();
  if (man.factor_count() == 2 && man.dim(0) == 2 && man.dim(1) == 4) return corollary_b_base_field(geometry);
  std::vector<FactorStructure> parts;
  for (std::size_t a = 0; a < man.factor_count(); ++a) {
    if (man.dim(a) == 2) {
      parts.push_back(s2_rotation_structure());
    } else if (man.dim(a) == 6) {
      parts.push_back(octonionic_structure());
    } else {
      throw InvalidManifold("no built-in base field on " + man.describe());
    }
  }
  return product_field(geometry, std::move(parts));
}

AuditReport gauge_validity_check(const GaugeParametrization& family, const Vector& theta,
                                 const std::vector<EmbeddedPoint>& points, double tol) {
  const auto field = family.field(theta);
  double q_defect = 0.0, j_defect = 0.0;
  for (const auto& p : points) {
    const Matrix q = family.rotation(theta, p);
    q_defect = std::max(q_defect, (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff());
    for (const auto& c : validate_field_at(field, p, tol).checks()) {
      j_defect = std::max(j_defect, c.computed);
    }
  }
  const std::string tag = "degree " + std::to_string(family.degree());
  AuditReport report("gauge validity, " + tag);
  report.expect(tag + ": Q orthogonality", q_defect, 0.0, tol, "Q^T Q = I");
  report.expect(tag + ": J validity", j_defect, 0.0, tol, "J_theta(p) orthogonal, J^2 = -I, kills normals");
  return report;
}

ExperimentReport run_experiment(const std::string& name, const ACSField& base, const ExperimentConfig& config) {
  if (config.points < 1) throw ContractViolation("experiment: points must be >= 1");
  if (config.degrees.empty()) throw ContractViolation("experiment: no degrees");
  for (int d : config.degrees) {
    if (d < 0) throw ContractViolation("experiment: degrees must be >= 0");
  }
  std::vector<int> grid = config.restart_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) grid.push_back(config.search.restarts);
  if (grid.front() < 1 || grid.back() > config.search.restarts) {
    throw ContractViolation("experiment: restart grid entries must lie in [1, restarts]");
  }

  const auto& geo = base.geometry();
  const auto points = config.point_set ? *config.point_set
                                       : sample_points(geo, config.points, config.seed, base.domain());
  for (const auto& p : points) {
    if (!base.contains(p)) throw ContractViolation("experiment: sample point outside the base field's domain");
  }

  ExperimentReport report;
  report.experiment = name;
  report.manifold = geo.manifold().describe();
  report.label = "heuristic evidence, not a proof: finite gauge family, finite samples";
  report.base_energy = nijenhuis_energy(base, points, config.search.frame_pairs,
                                        derive_seed(config.seed, kEnergyStream), config.search.fd_step);
  report.floor = std::numeric_limits<double>::infinity();

  std::optional<GaugeParametrization> lower;  // previous degree, when lower than the current one
  bool degree_monotone = true;
  for (int d : config.degrees) {
    const auto family = config.trivial_gauge ? GaugeParametrization::trivial(base) : GaugeParametrization(base, d);
    SearchOptions options = config.search;
    const SearchResult* warm = nullptr;
    if (lower && !config.trivial_gauge && lower->degree() < d) {
      warm = &report.searches.back();
      options.warm_start = family.lift(warm->best_params, *lower);
    }
    auto result = minimize_energy(family, points, options, config.seed);
    double previous = std::numeric_limits<double>::infinity();
    for (int k : grid) {
      const double best = *std::min_element(result.restart_energies.begin(), result.restart_energies.begin() + k);
      report.cells.push_back({d, k, best});
      report.monotone = report.monotone && best <= previous;
      previous = best;
      report.floor = std::min(report.floor, best);
    }
    report.checks.append(gauge_validity_check(family, result.best_params, points));
    const std::string tag = "degree " + std::to_string(d);
    if (warm) {
      degree_monotone = degree_monotone && result.best_energy <= warm->best_energy;
      report.checks.compare(tag + ": restart-0 initial energy", result.initial_energies.front(), warm->best_energy,
                            kDefaultTolerances.linalg * std::max(1.0, warm->best_energy),
                            "E(J_theta) at the lifted optimum of degree " + std::to_string(warm->degree));
    } else {
      report.checks.compare(tag + ": restart-0 initial energy", result.initial_energies.front(),
                            report.base_energy, kDefaultTolerances.linalg * std::max(1.0, report.base_energy),
                            "E(J_0) at theta = 0");
    }
    lower = family;
    report.searches.push_back(std::move(result));
  }
  report.checks.expect("best energy non-increasing in degree", degree_monotone ? 0.0 : 1.0, 0.0, 0.0,
                       "restart 0 of degree d starts at the lifted optimum of the previous lower degree");
  report.checks.expect("best-so-far monotone", report.monotone ? 0.0 : 1.0, 0.0, 0.0,
                       "nested restarts never raise the best energy");
  report.checks.expect("energies nonnegative", report.floor < 0.0 ? -report.floor : 0.0, 0.0, 0.0,
                       "E(J) >= 0");
  report.checks.record("floor", report.floor, "min over cells of best energy");
  report.checks.record("base_energy", report.base_energy, "E(J_0)");
  report.checks.record("points", static_cast<double>(points.size()), "sample count");
  return report;
}

ExperimentReport corollary_b_experiment(const ProductManifold& manifold, const ExperimentConfig& config) {
  return run_experiment("corollary-b", corollary_b_base_field(EmbeddedProduct(manifold)), config);
}

ExperimentReport s6_experiment(const ProductManifold& manifold, const ExperimentConfig& config) {
  return run_experiment("s6", s6_base_field(EmbeddedProduct(manifold)), config);
}

SplittingPressureReport splitting_pressure_probe(const ProductManifold& manifold, int samples,
                                                 std::uint64_t seed, int bin_count, double tol) {
  if (manifold.dim(0) != 2) throw InvalidManifold("splitting_pressure_probe: first factor must be a 2-sphere");
  if (samples < 1) throw ContractViolation("splitting_pressure_probe: samples >= 1");
  if (bin_count < 1) throw ContractViolation("splitting_pressure_probe: bin_count >= 1");

  std::vector<SphereFactor> doubled_factors = manifold.factors();
  doubled_factors[0] = SphereFactor(2, 2.0 * manifold.factor(0).curvature());
  const ProductManifold doubled(doubled_factors);
  const CurvatureOracle oracle(manifold), oracle2(doubled);
  const double alpha = manifold.factor(0).curvature();

  SplittingPressureReport out;
  out.samples = samples;
  for (int b = 0; b < bin_count; ++b) {
    out.bins.push_back({static_cast<double>(b) / bin_count, static_cast<double>(b + 1) / bin_count, 0,
                        std::numeric_limits<double>::infinity(), 0.0});
  }
  out.min_abs_direct_gap = std::numeric_limits<double>::infinity();

  for (int s = 0; s < samples; ++s) {
    const auto j = random_orthogonal_acs(manifold, derive_seed(seed, 2 * static_cast<std::uint64_t>(s)));
    const auto d = splitting_defect(oracle, j);
    const double gap = std::clamp(1.0 - d.c * d.c, 0.0, 1.0);
    const double mag = std::abs(d.direct);
    auto& bin = out.bins[std::min(bin_count - 1, static_cast<int>(gap * bin_count))];
    ++bin.count;
    bin.min_abs_direct = std::min(bin.min_abs_direct, mag);
    bin.max_abs_direct = std::max(bin.max_abs_direct, mag);
    if (gap > 0.1) {
      ++out.gap_samples;
      out.min_abs_direct_gap = std::min(out.min_abs_direct_gap, mag);
      out.max_abs_direct_gap = std::max(out.max_abs_direct_gap, mag);
    }
    if (d.c * d.c <= 0.1) ++out.wide_samples;

    const auto d2 = splitting_defect(oracle2, OrthogonalACS(doubled, j.matrix()));
    out.alpha_scaling_error = std::max(
        out.alpha_scaling_error, std::abs((d2.direct - d2.r2_term) - 2.0 * (d.direct - d.r2_term)));

    const auto split = random_block_diagonal_acs(manifold, derive_seed(seed, 2 * static_cast<std::uint64_t>(s) + 1));
    out.max_split_defect = std::max(out.max_split_defect, std::abs(splitting_defect(oracle, split).direct));
  }
  for (auto& bin : out.bins) {
    if (bin.count == 0) bin.min_abs_direct = 0.0;
  }
  if (out.gap_samples == 0) out.min_abs_direct_gap = 0.0;

  auto& r = out.checks;
  if (out.gap_samples > 0) {
    r.expect("min|direct| over 1-c^2>0.1 below floor", std::max(0.0, 0.01 * alpha - out.min_abs_direct_gap), 0.0,
             tol, "1-c^2 > 0.1 => |gray(x,y,x,y)| >= 0.01 alpha");
  }
  if (out.wide_samples > 0) {
    r.expect("max|direct| over 1-c^2>0.1 below floor", std::max(0.0, 0.81 * alpha - out.max_abs_direct_gap), 0.0,
             tol, "c^2 <= 0.1 => |gray(x,y,x,y)| >= 0.81 alpha");
  }
  r.expect("split_structure_defect", out.max_split_defect, 0.0, tol, "J(T S^2) = T S^2 => gray(x,y,x,y) = 0");
  r.expect("alpha_scaling", out.alpha_scaling_error, 0.0, tol * std::max(1.0, alpha),
           "direct - r2_term = -alpha (1-c^2)^2 is linear in alpha");
  r.record("min|direct| over 1-c^2>0.1", out.min_abs_direct_gap, "measured");
  r.record("max|direct| over 1-c^2>0.1", out.max_abs_direct_gap, "measured");
  r.record("samples", samples, "sample count");
  r.record("samples_gap_gt_0.1", out.gap_samples, "sub-sample size");
  r.record("samples_c2_le_0.1", out.wide_samples, "sub-sample size");
  for (const auto& bin : out.bins) {
    char name[64];
    std::snprintf(name, sizeof name, "bin[%.2f,%.2f)", bin.gap_lo, bin.gap_hi);
    r.record(std::string(name) + ".count", bin.count, "1-c^2 histogram");
    r.record(std::string(name) + ".min|direct|", bin.min_abs_direct, "1-c^2 histogram");
  }
  return out;
}

}  // namespace oacs
