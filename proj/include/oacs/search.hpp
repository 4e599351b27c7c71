#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oacs/audit_report.hpp"
#include "oacs/curvature_identities.hpp"
#include "oacs/gauge.hpp"
#include "oacs/nelder_mead.hpp"

namespace oacs {

struct SearchOptions {
  int restarts = 20;
  int budget = 2000;        // objective evaluations per restart
  int frame_pairs = 1;
  double fd_step = kDefaultTolerances.fd_step;
  // Both are divided by sqrt(monomial count) of the family.
  double initial_step = 0.1;   // Nelder-Mead simplex edge
  double initial_spread = 0.2; // std. deviation of random starting parameters
  int max_initial_retries = 8;
  std::optional<Vector> warm_start;  // start of restart 0 instead of theta = 0
};

struct SearchResult {
  double best_energy = 0.0;
  Vector best_params;
  int best_restart = 0;
  std::vector<double> restart_energies;
  std::vector<double> initial_energies;
  std::vector<int> evaluations;
  std::uint64_t seed = 0;
  SearchOptions options;
  std::string manifold;
  int degree = 0;
  std::size_t parameter_count = 0;
  std::size_t point_count = 0;
};

/// Minimizes the Nijenhuis energy of J_theta over theta. Restart 0 starts at
/// options.warm_start, or at theta = 0 (the base field); restart i > 0 starts from Gaussian parameters
/// drawn with sub-seed derive_seed(seed, i). All restarts share the point set
/// and the frame pairs (seeded by derive_seed(seed, kEnergyStream)). A start
/// with non-finite energy is redrawn up to max_initial_retries times before
/// SearchError is thrown.
SearchResult minimize_energy(const GaugeParametrization& family, const std::vector<EmbeddedPoint>& points,
                             const SearchOptions& options, std::uint64_t seed);

inline constexpr std::uint64_t kEnergyStream = 0x4e494aULL;

/// Canonical S^2 rotation (+) the chart structure on S^4; smooth on the
/// chart domain only.
ACSField corollary_b_base_field(const EmbeddedProduct& geometry);

/// Octonionic structure on a single 6-sphere.
ACSField s6_base_field(const EmbeddedProduct& geometry);

/// Base field by manifold shape: canonical rotations on products of
/// 2-spheres, octonionic structures on products of 6-spheres, mixed products
/// of 2- and 6-spheres factorwise, and corollary_b_base_field on
/// S^2 x S^4. InvalidManifold otherwise.
ACSField default_base_field(const EmbeddedProduct& geometry);

struct ExperimentConfig {
  std::vector<int> degrees{0, 1, 2};
  std::vector<int> restart_grid{1, 5, 10, 20};
  int points = 100;
  bool trivial_gauge = false;  // zero-parameter family (J0 only)
  SearchOptions search;
  std::uint64_t seed = 0;
  std::optional<std::vector<EmbeddedPoint>> point_set;  // overrides sampling
};

struct ExperimentCell {
  int degree = 0;
  int restarts = 0;
  double best_energy = 0.0;
};

struct ExperimentReport {
  std::string experiment;
  std::string manifold;
  std::string label;
  double base_energy = 0.0;
  std::vector<SearchResult> searches;  // one per degree
  std::vector<ExperimentCell> cells;   // degree-major, restart grid ascending
  bool monotone = true;
  double floor = 0.0;                  // min over cells
  AuditReport checks{"search"};
};

/// Degree x restart-count grid on S^2(alpha) x S^4(beta). The cell for k
/// restarts is the best of the first k restarts of one run per degree, so
/// cells are nested. When a degree follows a lower one, its restart 0 starts
/// from the lower degree's best parameters (lifted), so the best energy never
/// increases with the degree either. Throws InvalidManifold for other manifolds.
ExperimentReport corollary_b_experiment(const ProductManifold& manifold, const ExperimentConfig& config);

/// Same grid on S^6(beta) around the octonionic structure.
ExperimentReport s6_experiment(const ProductManifold& manifold, const ExperimentConfig& config);

/// Runs the grid for an arbitrary base field (sample points restricted to
/// its domain).
ExperimentReport run_experiment(const std::string& name, const ACSField& base, const ExperimentConfig& config);

/// Q orthogonality and pointwise validity of J_theta at every point.
AuditReport gauge_validity_check(const GaugeParametrization& family, const Vector& theta,
                                 const std::vector<EmbeddedPoint>& points,
                                 double tol = kDefaultTolerances.acs);

struct PressureBin {
  double gap_lo = 0.0;  // bin of 1 - c^2
  double gap_hi = 0.0;
  int count = 0;
  double min_abs_direct = 0.0;
  double max_abs_direct = 0.0;
};

struct SplittingPressureReport {
  int samples = 0;
  std::vector<PressureBin> bins;
  double min_abs_direct_gap = 0.0;  // over samples with 1 - c^2 > 0.1
  double max_abs_direct_gap = 0.0;
  int gap_samples = 0;
  int wide_samples = 0;             // samples with c^2 <= 0.1
  double max_split_defect = 0.0;
  double alpha_scaling_error = 0.0;
  AuditReport checks{"splitting-pressure"};
};

/// Seeded sweep of random pointwise J on S^2(alpha) x M'. Asserts
/// |direct| >= 0.01 alpha whenever 1 - c^2 > 0.1, max |direct| >= 0.81 alpha
/// over that sub-sample when it contains a sample with c^2 <= 0.1, the
/// vanishing of the defect on split structures, and that the S^2 part
/// direct - r2_term doubles with alpha for the same J.
SplittingPressureReport splitting_pressure_probe(const ProductManifold& manifold, int samples,
                                                 std::uint64_t seed, int bin_count = 10,
                                                 double tol = kDefaultTolerances.audit);

}  // namespace oacs
