#include "oacs/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "oacs/config.hpp"
#include "oacs/curvature_identities.hpp"
#include "oacs/nijenhuis.hpp"
#include "oacs/random.hpp"
#include "oacs/report_io.hpp"
#include "oacs/search.hpp"

namespace oacs {

namespace {

namespace fs = std::filesystem;

struct Invocation {
  std::string command;
  std::string target;
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> out_dir;
};

// Extra files written next to the report when --out is given.
struct Artifact {
  std::string file;
  std::string content;
};

struct Outcome {
  AuditReport report;
  std::vector<Artifact> artifacts;
};

void copy_rows(AuditReport& into, const AuditReport& from, const std::string& prefix) {
  for (const auto& c : from.checks()) {
    if (c.verdict == Verdict::recorded) {
      into.record(prefix + c.name, c.computed, c.anchor);
    } else if (c.asserted) {
      into.expect(prefix + c.name, c.computed, c.expected, c.tolerance, c.anchor);
    } else {
      into.compare(prefix + c.name, c.computed, c.expected, c.tolerance, c.anchor);
    }
  }
}

std::vector<EmbeddedPoint> points_for(const RunConfig& cfg, const EmbeddedProduct& geo, const ACSField& field) {
  std::vector<EmbeddedPoint> pts;
  if (cfg.points_file) {
    std::ifstream in(*cfg.points_file);
    if (!in) throw ConfigError("cannot read points_file '" + *cfg.points_file + "'");
    try {
      pts = load_points(in, geo);
    } catch (const ContractViolation& e) {
      throw ConfigError(*cfg.points_file + ": " + e.what());
    }
    if (pts.empty()) throw ConfigError(*cfg.points_file + ": no points");
    for (const auto& p : pts) {
      if (!field.contains(p)) throw ConfigError(*cfg.points_file + ": point outside the field's domain");
    }
  } else {
    pts = sample_points(geo, cfg.points, cfg.seed, field.domain());
  }
  return pts;
}

Outcome run_audit(const RunConfig& cfg, const std::string& suite) {
  const auto man = cfg.manifold();
  const CurvatureOracle oracle(man);
  const auto& tol = cfg.tolerances;
  Outcome o;
  if (suite == "gray") {
    o.report = audit_gray_cancellation(oracle, cfg.samples, cfg.seed, tol.acs);
  } else if (suite == "lemma2") {
    if (man.dim(0) != 2) throw InvalidManifold("audit lemma2: first factor must be a 2-sphere");
    o.report = audit_splitting_defect(oracle, cfg.samples, cfg.seed, tol.acs);
    copy_rows(o.report, splitting_pressure_probe(man, cfg.samples, cfg.seed, 10, tol.audit).checks, "pressure:");
  } else if (suite == "lemma5") {
    o.report = audit_block_diagonal_components(oracle, cfg.samples, cfg.seed, tol.audit);
    if (cfg.swap_probe) {
      // Equal curvatures: two copies of the first factor.
      const ProductManifold twins({man.factor(0), man.factor(0)});
      const auto swap = swap_acs(twins);
      copy_rows(o.report, validate_acs(swap, tol.acs), "swap:");
      copy_rows(o.report, audit_block_components(CurvatureOracle(twins), swap, tol.audit), "swap:");
      const auto probe = block_splitting_probe(ricci_star(CurvatureOracle(twins), swap));
      o.report.record("swap:rho*_symmetry_defect", probe.symmetry_defect, "max|rho*_ij - rho*_ji|");
      o.report.record("swap:off_block_mass", probe.off_block_mass, "max over a != b of |J(a,b)_ij|");
      std::ostringstream m;
      write_matrix(m, swap.matrix());
      o.artifacts.push_back({"swap_acs.txt", m.str()});
    }
  } else if (suite == "ricci-star") {
    o.report = audit_ricci_star_identity(oracle, cfg.samples, cfg.seed, tol.audit);
  } else if (suite == "curvature") {
    o.report = curvature_symmetry_audit(oracle, cfg.samples, cfg.seed, tol.linalg);
  }
  return o;
}

ACSField nijenhuis_field(const RunConfig& cfg, const std::string& name, const EmbeddedProduct& geo) {
  if (name == "s2") return canonical_s2_field(geo);
  if (name == "s6-octonion") return octonionic_s6_field(geo);
  if (name == "product") {
    const auto& man = geo.manifold();
    bool has2 = false, has6 = false;
    for (std::size_t a = 0; a < man.factor_count(); ++a) {
      has2 = has2 || man.dim(a) == 2;
      has6 = has6 || man.dim(a) == 6;
    }
    if (!has2 || !has6) throw InvalidManifold("nijenhuis product: needs 2-sphere and 6-sphere factors");
    return default_base_field(geo);
  }
  // gauged
  const auto base = default_base_field(geo);
  const GaugeParametrization family(base, cfg.degrees.front());
  Rng rng(derive_seed(cfg.seed, 0x67617567ULL));
  const double spread = 0.2 / std::sqrt(static_cast<double>(family.monomial_count()));
  return family.field(spread * rng.gaussian_vector(static_cast<Eigen::Index>(family.parameter_count())));
}

Outcome run_nijenhuis(const RunConfig& cfg, const std::string& name) {
  const EmbeddedProduct geo(cfg.manifold());
  const auto field = nijenhuis_field(cfg, name, geo);
  const auto pts = points_for(cfg, geo, field);
  const double h = cfg.tolerances.fd_step;
  const auto& tol = cfg.tolerances;

  Outcome o;
  o.report = AuditReport("Nijenhuis tensor, field " + name + " on " + geo.manifold().describe());
  double validity = 0.0;
  for (const auto& p : pts) {
    for (const auto& c : validate_field_at(field, p, tol.acs).checks()) validity = std::max(validity, c.computed);
  }
  o.report.expect("acs_validity", validity, 0.0, tol.acs, "J(p) orthogonal, J^2 = -I, kills normals");
  copy_rows(o.report, nijenhuis_tensoriality_check(field, pts.front(), cfg.seed, h, 5e-6), "tensoriality:");

  const auto energy = nijenhuis_energy_breakdown(field, pts, cfg.frame_pairs, cfg.seed, h);
  for (std::size_t k = 0; k < energy.point_means.size(); ++k) {
    o.report.record("|N|^2[point=" + std::to_string(k) + "]", energy.point_means[k], "mean over frame pairs");
  }
  if (name == "s2") {
    o.report.compare("energy", energy.energy, 0.0, 1e-10, "every J on S^2 is integrable");
  } else {
    o.report.record("energy", energy.energy, "mean |N|^2 over points and frame pairs");
  }

  if (name == "product" && cfg.restriction_check) {
    const auto& man = geo.manifold();
    for (std::size_t a = 0; a < man.factor_count(); ++a) {
      if (man.dim(a) != 6) continue;
      const EmbeddedProduct alone(ProductManifold({man.factor(a)}));
      copy_rows(o.report,
                restriction_check(field, a, octonionic_s6_field(alone), pts, derive_seed(cfg.seed, 0x72ULL + a), h,
                                  tol.fd),
                "restriction[factor=" + std::to_string(a + 1) + "]:");
    }
  }
  std::ostringstream pts_text;
  save_points(pts_text, geo, pts);
  o.artifacts.push_back({"points.txt", pts_text.str()});
  return o;
}

Outcome run_search(const RunConfig& cfg, const std::string& experiment) {
  const auto man = cfg.manifold();
  const EmbeddedProduct geo(man);
  const auto base = experiment == "corollary-b" ? corollary_b_base_field(geo) : s6_base_field(geo);

  ExperimentConfig ec;
  ec.degrees = cfg.degrees;
  ec.restart_grid = cfg.restart_grid;
  ec.points = cfg.points;
  ec.trivial_gauge = cfg.trivial_gauge;
  ec.seed = cfg.seed;
  ec.search.restarts = cfg.restarts;
  ec.search.budget = cfg.budget;
  ec.search.frame_pairs = cfg.frame_pairs;
  ec.search.fd_step = cfg.tolerances.fd_step;
  if (cfg.points_file) ec.point_set = points_for(cfg, geo, base);
  const auto rep = run_experiment(experiment, base, ec);

  Outcome o;
  o.report = AuditReport(experiment + " search on " + rep.manifold + " (" + rep.label + ")");
  copy_rows(o.report, rep.checks, "");
  for (const auto& c : rep.cells) {
    o.report.record("cell[degree=" + std::to_string(c.degree) + ",restarts=" + std::to_string(c.restarts) + "]",
                    c.best_energy, "best energy over the first restarts");
  }
  std::ostringstream csv, params;
  csv << "degree,restart,initial_energy,best_energy,evaluations\n";
  for (const auto& s : rep.searches) {
    o.report.record("best_energy[degree=" + std::to_string(s.degree) + "]", s.best_energy, "min over restarts");
    o.report.record("parameters[degree=" + std::to_string(s.degree) + "]", static_cast<double>(s.parameter_count),
                    "gauge parameter count");
    for (std::size_t r = 0; r < s.restart_energies.size(); ++r) {
      csv << s.degree << ',' << r << ',' << format_number(s.initial_energies[r]) << ','
          << format_number(s.restart_energies[r]) << ',' << s.evaluations[r] << '\n';
    }
    params << "degree " << s.degree << " restart " << s.best_restart << " energy " << format_number(s.best_energy)
           << " params";
    for (Eigen::Index k = 0; k < s.best_params.size(); ++k) params << ' ' << format_number(s.best_params(k));
    params << '\n';
  }
  o.artifacts.push_back({"restarts.csv", csv.str()});
  o.artifacts.push_back({"best_params.txt", params.str()});
  return o;
}

RunConfig resolve_config(const Invocation& inv) {
  RunConfig cfg = defaults_for(inv.command, inv.target);
  std::optional<std::string> path = inv.config_path;
  if (!path) {
    if (const char* dir = std::getenv("OACS_CONFIG_DIR"); dir && *dir) {
      const fs::path candidate = fs::path(dir) / (inv.command + "-" + inv.target + ".yaml");
      if (fs::exists(candidate)) path = candidate.string();
    }
  }
  if (path) cfg = load_config_file(std::move(cfg), *path);
  if (inv.seed) cfg.seed = *inv.seed;
  if (inv.format) cfg.format = parse_format(*inv.format);
  validate(cfg);
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = resolve_config(inv);
  } catch (const std::exception& e) {
    err << "oacs: " << e.what() << '\n';
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (inv.command == "audit") {
      outcome = run_audit(cfg, inv.target);
    } else if (inv.command == "nijenhuis") {
      outcome = run_nijenhuis(cfg, inv.target);
    } else {
      outcome = run_search(cfg, inv.target);
    }
  } catch (const ConfigError& e) {
    err << "oacs: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // InvalidManifold, ContractViolation
    err << "oacs: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "oacs: " << e.what() << '\n';
    return 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto& report = outcome.report;
  write_report(out, report, cfg.format);

  if (inv.out_dir) {
    try {
      const fs::path dir = *inv.out_dir;
      fs::create_directories(dir);
      const std::string stem = inv.command + "-" + inv.target;
      std::ostringstream csv, records, manifest;
      write_csv(csv, report);
      write_records(records, report);
      write_manifest(manifest, {inv.command, inv.target, echo(cfg), kArtifactVersion, seconds, report.counts()});
      write_file(dir / (stem + ".csv"), csv.str());
      write_file(dir / (stem + ".records"), records.str());
      write_file(dir / "manifest.txt", manifest.str());
      for (const auto& a : outcome.artifacts) write_file(dir / a.file, a.content);
    } catch (const std::exception& e) {
      err << "oacs: " << e.what() << '\n';
      return 2;
    }
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical audits of orthogonal almost complex structures on products of round spheres", "oacs"};
  app.require_subcommand(1);
  Invocation inv;
  std::string config_path, format, out_dir;
  std::uint64_t seed = 0;

  auto add = [&](const std::string& name, const std::string& help, std::vector<std::string> targets) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("target", inv.target, "one of: " + CLI::detail::join(targets, ", "))
        ->required()
        ->check(CLI::IsMember(targets));
    sub->add_option("--config", config_path, "YAML config file");
    sub->add_option("--seed", seed, "base seed (u64)");
    sub->add_option("--format", format, "table, csv or records")->check(CLI::IsMember({"table", "csv", "records"}));
    sub->add_option("--out", out_dir, "directory for report files");
    sub->callback([&, name, sub] {
      inv.command = name;
      if (sub->count("--config")) inv.config_path = config_path;
      if (sub->count("--seed")) inv.seed = seed;
      if (sub->count("--format")) inv.format = format;
      if (sub->count("--out")) inv.out_dir = out_dir;
    });
  };
  add("audit", "pointwise curvature audits", {"gray", "lemma2", "lemma5", "ricci-star", "curvature"});
  add("nijenhuis", "finite-difference Nijenhuis tensor of a field", {"s2", "s6-octonion", "product", "gauged"});
  add("search", "Nijenhuis energy minimization over gauge families", {"corollary-b", "s6"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  return execute(inv, out, err);
}

}  // namespace oacs
