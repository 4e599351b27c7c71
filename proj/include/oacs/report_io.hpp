#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oacs/audit_report.hpp"
#include "oacs/config.hpp"
#include "oacs/manifold.hpp"

namespace oacs {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

/// Aligned columns name | computed | expected | tol | verdict | anchor with
/// 10 significant digits; a title line first.
void write_table(std::ostream& out, const AuditReport& report);

/// Header name,computed,expected,tolerance,verdict,anchor; RFC 4180 quoting.
void write_csv(std::ostream& out, const AuditReport& report);

/// One brace-delimited record per line:
///   {"name": "...", "computed": 1.0, "expected": null, ..., "anchor": "..."}
/// Non-finite numbers are written as the strings "nan", "inf", "-inf".
void write_records(std::ostream& out, const AuditReport& report);

void write_report(std::ostream& out, const AuditReport& report, OutputFormat format);

/// Parsers for the two machine formats (round trip of write_csv / write_records).
std::vector<Check> read_csv(std::istream& in);
std::vector<Check> read_records(std::istream& in);

struct RunManifest {
  std::string command;
  std::string target;
  std::string config_echo;
  std::string version = kArtifactVersion;
  double wall_clock_seconds = 0.0;
  VerdictCounts counts;
};

/// key: value lines followed by the config echo; only the wall_clock line
/// depends on the run.
void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Row-major matrix text: a header line "total_dim <n>", then n lines of n
/// numbers at 17 significant digits.
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);  // ContractViolation on malformed input

}  // namespace oacs
