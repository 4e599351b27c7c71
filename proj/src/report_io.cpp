#include "oacs/report_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace oacs {

namespace {

std::string format_digits(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ContractViolation("bad number '" + s + "'");
  return v;
}

Verdict parse_verdict(const std::string& s) {
  for (auto v : {Verdict::pass, Verdict::mismatch, Verdict::fail, Verdict::recorded}) {
    if (to_string(v) == s) return v;
  }
  throw ContractViolation("bad verdict '" + s + "'");
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) {
  if (std::isfinite(v)) return format_number(v);
  return "\"" + format_number(v) + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string format_number(double v) { return format_digits(v, 17); }

void write_table(std::ostream& out, const AuditReport& report) {
  const auto& checks = report.checks();
  std::vector<std::array<std::string, 6>> rows;
  rows.push_back({"name", "computed", "expected", "tol", "verdict", "anchor"});
  for (const auto& c : checks) {
    const bool rec = c.verdict == Verdict::recorded;
    rows.push_back({c.name, format_digits(c.computed, 10), rec ? "-" : format_digits(c.expected, 10),
                    rec ? "-" : format_digits(c.tolerance, 3), std::string(to_string(c.verdict)), c.anchor});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < 5; ++k) width[k] = std::max(width[k], r[k].size());
  }
  out << "== " << report.title() << " ==\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < 5; ++k) {
      out << r[k] << std::string(width[k] - r[k].size() + 2, ' ');
    }
    out << r[5] << '\n';
  }
  const auto n = report.counts();
  out << "-- pass " << n.pass << ", mismatch " << n.mismatch << ", fail " << n.fail << ", recorded "
      << n.recorded << '\n';
}

void write_csv(std::ostream& out, const AuditReport& report) {
  out << "name,computed,expected,tolerance,verdict,anchor\n";
  for (const auto& c : report.checks()) {
    out << csv_field(c.name) << ',' << format_number(c.computed) << ',' << format_number(c.expected) << ','
        << format_number(c.tolerance) << ',' << to_string(c.verdict) << ',' << csv_field(c.anchor) << '\n';
  }
}

void write_records(std::ostream& out, const AuditReport& report) {
  for (const auto& c : report.checks()) {
    out << "{\"name\": " << json_string(c.name) << ", \"computed\": " << json_number(c.computed)
        << ", \"expected\": " << json_number(c.expected) << ", \"tolerance\": " << json_number(c.tolerance)
        << ", \"verdict\": \"" << to_string(c.verdict) << "\", \"anchor\": " << json_string(c.anchor) << "}\n";
  }
}

void write_report(std::ostream& out, const AuditReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::table: write_table(out, report); break;
    case OutputFormat::csv: write_csv(out, report); break;
    case OutputFormat::records: write_records(out, report); break;
  }
}

std::vector<Check> read_csv(std::istream& in) {
  std::vector<Check> out;
  std::string line;
  if (!std::getline(in, line) || line != "name,computed,expected,tolerance,verdict,anchor") {
    throw ContractViolation("read_csv: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw ContractViolation("read_csv: expected 6 fields in '" + line + "'");
    Check c;
    c.name = f[0];
    c.computed = parse_number(f[1]);
    c.expected = parse_number(f[2]);
    c.tolerance = parse_number(f[3]);
    c.verdict = parse_verdict(f[4]);
    c.anchor = f[5];
    c.asserted = c.verdict == Verdict::pass || c.verdict == Verdict::fail;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> read_records(std::istream& in) {
  std::vector<Check> out;
  std::string line;
  auto number = [](const nlohmann::json& v) {
    return v.is_string() ? parse_number(v.get<std::string>()) : v.get<double>();
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      Check c;
      c.name = j.at("name").get<std::string>();
      c.computed = number(j.at("computed"));
      c.expected = number(j.at("expected"));
      c.tolerance = number(j.at("tolerance"));
      c.verdict = parse_verdict(j.at("verdict").get<std::string>());
      c.anchor = j.at("anchor").get<std::string>();
      c.asserted = c.verdict == Verdict::pass || c.verdict == Verdict::fail;
      out.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw ContractViolation(std::string("read_records: ") + e.what());
    }
  }
  return out;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  out << "version: " << m.version << '\n';
  out << "command: " << m.command << ' ' << m.target << '\n';
  out << "wall_clock_seconds: " << format_digits(m.wall_clock_seconds, 6) << '\n';
  out << "checks: " << m.counts.total() << '\n';
  out << "pass: " << m.counts.pass << '\n';
  out << "mismatch: " << m.counts.mismatch << '\n';
  out << "fail: " << m.counts.fail << '\n';
  out << "recorded: " << m.counts.recorded << '\n';
  out << "config:\n";
  std::istringstream cfg(m.config_echo);
  std::string line;
  while (std::getline(cfg, line)) out << "  " << line << '\n';
}

void write_matrix(std::ostream& out, const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("write_matrix: square matrix expected");
  out << "total_dim " << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? " " : "") << format_number(m(i, k));
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  std::string word;
  long n = 0;
  if (!(in >> word >> n) || word != "total_dim" || n < 1) {
    throw ContractViolation("read_matrix: expected header 'total_dim <n>'");
  }
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      if (!(in >> word)) throw ContractViolation("read_matrix: too few entries");
      try {
        m(i, k) = parse_number(word);
      } catch (const std::invalid_argument&) {
        throw ContractViolation("read_matrix: bad entry '" + word + "'");
      }
    }
  }
  if (in >> word) throw ContractViolation("read_matrix: trailing data");
  return m;
}

}  // namespace oacs
