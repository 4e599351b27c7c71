#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oacs/manifold.hpp"
#include "oacs/tolerances.hpp"

namespace oacs {

enum class OutputFormat { table, csv, records };

OutputFormat parse_format(const std::string& name);  // ConfigError on unknown names
std::string_view to_string(OutputFormat f);

/// Resolved run configuration. Every command starts from its own defaults
/// (defaults_for) and a config file overrides single keys.
///
/// File schema (YAML, flat keys; `factors` is the only nested entry):
///
///   seed: 7                      # u64
///   factors:                     # required in a config file
///     - {dim: 2, curvature: 1.0}
///     - {dim: 4, curvature: 1.0}
///   samples: 1000                # pointwise audit samples
///   points: 100                  # sample points for field commands
///   frame_pairs: 1               # tangent pairs per point in the energy
///   fd_step: 1.0e-5             # finite-difference step
///   restarts: 20
///   budget: 2000                 # objective evaluations per restart
///   degrees: [0, 1, 2]
///   restart_grid: [1, 5, 10, 20]
///   gauge: polynomial            # polynomial | none
///   format: table                # table | csv | records
///   swap_probe: true             # lemma5
///   restriction_check: true      # nijenhuis product
///   points_file: pts.txt         # optional, relative to the config file
///   tol_linalg: 1.0e-12
///   tol_acs: 1.0e-10
///   tol_audit: 1.0e-9
///   tol_fd: 2.0e-6
///   tol_optimization: 1.0e-8
///
/// Unknown keys are errors.
struct RunConfig {
  std::vector<SphereFactor> factors;
  Tolerances tolerances = kDefaultTolerances;  // fd_step lives here
  std::uint64_t seed = 1;
  int samples = 1000;
  int points = 200;
  int frame_pairs = 1;
  int restarts = 20;
  int budget = 2000;
  std::vector<int> degrees{0, 1, 2};
  std::vector<int> restart_grid{1, 5, 10, 20};
  bool trivial_gauge = false;
  OutputFormat format = OutputFormat::table;
  bool swap_probe = true;
  bool restriction_check = true;
  std::optional<std::string> points_file;

  ProductManifold manifold() const { return ProductManifold(factors); }
};

/// Built-in defaults of `command target`, e.g. ("audit", "lemma2").
/// ConfigError for unknown pairs.
RunConfig defaults_for(const std::string& command, const std::string& target);

/// Overlays a YAML document on `base`. `origin` names the source in messages
/// and anchors a relative points_file. Throws ConfigError on syntax errors,
/// unknown keys, bad values or a missing `factors` entry.
RunConfig apply_config_text(RunConfig base, const std::string& text, const std::string& origin = "<config>",
                            const std::string& base_dir = "");
RunConfig load_config_file(RunConfig base, const std::string& path);

/// Range checks shared by file and flag overrides (ConfigError).
void validate(const RunConfig& config);

/// Canonical YAML echo of a resolved config (stable key order, 17 digits).
std::string echo(const RunConfig& config);

}  // namespace oacs
