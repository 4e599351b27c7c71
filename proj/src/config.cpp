#include "oacs/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "oacs/errors.hpp"

namespace oacs {

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "records") return OutputFormat::records;
  throw ConfigError("unknown format '" + name + "' (table, csv, records)");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::table: return "table";
    case OutputFormat::csv: return "csv";
    case OutputFormat::records: return "records";
  }
  return "?";
}

RunConfig defaults_for(const std::string& command, const std::string& target) {
  RunConfig c;
  auto sphere = [](int d, double k) { return SphereFactor(d, k); };
  if (command == "audit") {
    if (target == "gray") {
      c.factors = {sphere(6, 1.0)};
    } else if (target == "lemma2") {
      c.factors = {sphere(2, 1.0), sphere(4, 1.0)};
      c.samples = 5000;
    } else if (target == "lemma5") {
      c.factors = {sphere(6, 1.0), sphere(6, 2.0)};
      c.samples = 50;
    } else if (target == "ricci-star") {
      c.factors = {sphere(6, 1.0), sphere(6, 2.0)};
      c.samples = 500;
    } else if (target == "curvature") {
      c.factors = {sphere(2, 1.0), sphere(4, 1.0), sphere(6, 2.0)};
    } else {
      throw ConfigError("unknown audit suite '" + target + "'");
    }
  } else if (command == "nijenhuis") {
    c.frame_pairs = 2;
    if (target == "s2") {
      c.factors = {sphere(2, 1.0)};
    } else if (target == "s6-octonion") {
      c.factors = {sphere(6, 1.0)};
    } else if (target == "product") {
      c.factors = {sphere(2, 1.0), sphere(6, 1.0)};
      c.points = 50;
    } else if (target == "gauged") {
      c.factors = {sphere(2, 1.0), sphere(4, 1.0)};
      c.points = 100;
      c.degrees = {1};
    } else {
      throw ConfigError("unknown field '" + target + "'");
    }
  } else if (command == "search") {
    c.frame_pairs = 1;
    if (target == "corollary-b") {
      c.factors = {sphere(2, 1.0), sphere(4, 1.0)};
      c.points = 100;
    } else if (target == "s6") {
      c.factors = {sphere(6, 1.0)};
      c.points = 200;
      c.restarts = 5;
      c.budget = 400;
      c.restart_grid = {1, 5};
    } else {
      throw ConfigError("unknown experiment '" + target + "'");
    }
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return c;
}

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key, const std::string& origin) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(origin + ": bad value for '" + key + "'");
  }
}

std::vector<int> int_list(const YAML::Node& node, const std::string& key, const std::string& origin) {
  if (!node.IsSequence()) throw ConfigError(origin + ": '" + key + "' must be a list of integers");
  std::vector<int> out;
  for (const auto& item : node) out.push_back(scalar<int>(item, key, origin));
  return out;
}

std::vector<SphereFactor> factor_list(const YAML::Node& node, const std::string& origin) {
  if (!node.IsSequence() || node.size() == 0) {
    throw ConfigError(origin + ": 'factors' must be a nonempty list of {dim, curvature}");
  }
  std::vector<SphereFactor> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& item = node[i];
    const std::string where = "factors[" + std::to_string(i) + "]";
    if (!item.IsMap()) throw ConfigError(origin + ": " + where + " must be a map");
    for (const auto& kv : item) {
      const auto k = kv.first.as<std::string>();
      if (k != "dim" && k != "curvature") throw ConfigError(origin + ": unknown key '" + k + "' in " + where);
    }
    if (!item["dim"] || !item["curvature"]) {
      throw ConfigError(origin + ": " + where + " needs dim and curvature");
    }
    try {
      out.emplace_back(scalar<int>(item["dim"], where + ".dim", origin),
                       scalar<double>(item["curvature"], where + ".curvature", origin));
    } catch (const InvalidManifold& e) {
      throw ConfigError(origin + ": " + where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

RunConfig apply_config_text(RunConfig c, const std::string& text, const std::string& origin,
                            const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.IsMap()) throw ConfigError(origin + ": top level must be a map of keys");

  bool have_factors = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const auto& v = kv.second;
    if (key == "seed") {
      c.seed = scalar<std::uint64_t>(v, key, origin);
    } else if (key == "factors") {
      c.factors = factor_list(v, origin);
      have_factors = true;
    } else if (key == "samples") {
      c.samples = scalar<int>(v, key, origin);
    } else if (key == "points") {
      c.points = scalar<int>(v, key, origin);
    } else if (key == "frame_pairs") {
      c.frame_pairs = scalar<int>(v, key, origin);
    } else if (key == "fd_step") {
      c.tolerances.fd_step = scalar<double>(v, key, origin);
    } else if (key == "restarts") {
      c.restarts = scalar<int>(v, key, origin);
    } else if (key == "budget") {
      c.budget = scalar<int>(v, key, origin);
    } else if (key == "degrees") {
      c.degrees = int_list(v, key, origin);
    } else if (key == "restart_grid") {
      c.restart_grid = int_list(v, key, origin);
    } else if (key == "gauge") {
      const auto g = scalar<std::string>(v, key, origin);
      if (g != "polynomial" && g != "none") throw ConfigError(origin + ": gauge must be polynomial or none");
      c.trivial_gauge = g == "none";
    } else if (key == "format") {
      c.format = parse_format(scalar<std::string>(v, key, origin));
    } else if (key == "swap_probe") {
      c.swap_probe = scalar<bool>(v, key, origin);
    } else if (key == "restriction_check") {
      c.restriction_check = scalar<bool>(v, key, origin);
    } else if (key == "points_file") {
      std::filesystem::path path = scalar<std::string>(v, key, origin);
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      c.points_file = path.string();
    } else if (key == "tol_linalg") {
      c.tolerances.linalg = scalar<double>(v, key, origin);
    } else if (key == "tol_acs") {
      c.tolerances.acs = scalar<double>(v, key, origin);
    } else if (key == "tol_audit") {
      c.tolerances.audit = scalar<double>(v, key, origin);
    } else if (key == "tol_fd") {
      c.tolerances.fd = scalar<double>(v, key, origin);
    } else if (key == "tol_optimization") {
      c.tolerances.optimization = scalar<double>(v, key, origin);
    } else {
      throw ConfigError(origin + ": unknown key '" + key + "'");
    }
  }
  if (!have_factors) throw ConfigError(origin + ": missing manifold spec ('factors')");
  validate(c);
  return c;
}

RunConfig load_config_file(RunConfig base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return apply_config_text(std::move(base), text.str(), path,
                           std::filesystem::path(path).parent_path().string());
}

void validate(const RunConfig& c) {
  if (c.factors.empty()) throw ConfigError("config: no factors");
  const auto& t = c.tolerances;
  for (double tol : {t.linalg, t.acs, t.audit, t.fd, t.optimization}) {
    if (!(tol > 0.0)) throw ConfigError("config: tolerances must be > 0");
  }
  if (!(t.fd_step >= kMinFdStep && t.fd_step <= kMaxFdStep)) {
    throw ConfigError("config: fd_step outside [1e-9, 1e-2]");
  }
  if (c.samples < 1 || c.points < 1 || c.frame_pairs < 1) {
    throw ConfigError("config: samples, points and frame_pairs must be >= 1");
  }
  if (c.restarts < 1 || c.budget < 1) throw ConfigError("config: restarts and budget must be >= 1");
  if (c.degrees.empty()) throw ConfigError("config: degrees must be nonempty");
  for (int d : c.degrees) {
    if (d < 0 || d > 4) throw ConfigError("config: degrees must lie in [0, 4]");
  }
  for (int k : c.restart_grid) {
    if (k < 1 || k > c.restarts) throw ConfigError("config: restart_grid entries must lie in [1, restarts]");
  }
}

std::string echo(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "factors" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : c.factors) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "dim" << YAML::Value << f.dim() << YAML::Key
        << "curvature" << YAML::Value << f.curvature() << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "samples" << YAML::Value << c.samples;
  out << YAML::Key << "points" << YAML::Value << c.points;
  out << YAML::Key << "frame_pairs" << YAML::Value << c.frame_pairs;
  out << YAML::Key << "fd_step" << YAML::Value << c.tolerances.fd_step;
  out << YAML::Key << "restarts" << YAML::Value << c.restarts;
  out << YAML::Key << "budget" << YAML::Value << c.budget;
  out << YAML::Key << "degrees" << YAML::Value << YAML::Flow << c.degrees;
  out << YAML::Key << "restart_grid" << YAML::Value << YAML::Flow << c.restart_grid;
  out << YAML::Key << "gauge" << YAML::Value << (c.trivial_gauge ? "none" : "polynomial");
  out << YAML::Key << "format" << YAML::Value << std::string(to_string(c.format));
  out << YAML::Key << "swap_probe" << YAML::Value << c.swap_probe;
  out << YAML::Key << "restriction_check" << YAML::Value << c.restriction_check;
  if (c.points_file) out << YAML::Key << "points_file" << YAML::Value << *c.points_file;
  out << YAML::Key << "tol_linalg" << YAML::Value << c.tolerances.linalg;
  out << YAML::Key << "tol_acs" << YAML::Value << c.tolerances.acs;
  out << YAML::Key << "tol_audit" << YAML::Value << c.tolerances.audit;
  out << YAML::Key << "tol_fd" << YAML::Value << c.tolerances.fd;
  out << YAML::Key << "tol_optimization" << YAML::Value << c.tolerances.optimization;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace oacs
