#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oacs/config.hpp"
#include "oacs/errors.hpp"
#include "oacs/report_io.hpp"

using namespace oacs;

TEST(Config, OverlaysKeysOnDefaults) {
  const auto base = defaults_for("audit", "lemma2");
  EXPECT_EQ(base.samples, 5000);
  const auto c = apply_config_text(base, R"(
seed: 42
factors:
  - {dim: 2, curvature: 2.0}
  - {dim: 4, curvature: 0.5}
samples: 300
fd_step: 1.0e-4
degrees: [0, 2]
gauge: none
format: csv
tol_audit: 1.0e-8
)");
  EXPECT_EQ(c.seed, 42u);
  ASSERT_EQ(c.factors.size(), 2u);
  EXPECT_EQ(c.factors[0], SphereFactor(2, 2.0));
  EXPECT_EQ(c.factors[1], SphereFactor(4, 0.5));
  EXPECT_EQ(c.samples, 300);
  EXPECT_EQ(c.tolerances.fd_step, 1e-4);
  EXPECT_EQ(c.tolerances.audit, 1e-8);
  EXPECT_EQ(c.tolerances.acs, kDefaultTolerances.acs);
  EXPECT_EQ(c.degrees, (std::vector<int>{0, 2}));
  EXPECT_TRUE(c.trivial_gauge);
  EXPECT_EQ(c.format, OutputFormat::csv);
  EXPECT_EQ(c.budget, base.budget);
}

TEST(Config, FailsClosed) {
  const auto base = defaults_for("audit", "gray");
  const std::string factors = "factors:\n  - {dim: 6, curvature: 1.0}\n";
  EXPECT_THROW(apply_config_text(base, factors + "smaples: 3\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, "seed: 3\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, factors + "seed: -1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, factors + "seed: [1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, "factors:\n  - {dim: 3, curvature: 1.0}\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, "factors:\n  - {dim: 2, curvature: -1.0}\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, "factors:\n  - {dim: 2, curv: 1.0}\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, factors + "gauge: fancy\n"), ConfigError);
  EXPECT_THROW(apply_config_text(base, factors + "format: xml\n"), ConfigError);
  EXPECT_THROW(load_config_file(base, "/nonexistent/config.yaml"), ConfigError);
  EXPECT_THROW(defaults_for("audit", "nope"), ConfigError);
  EXPECT_THROW(defaults_for("frobnicate", "gray"), ConfigError);
}

TEST(Config, RangeValidation) {
  auto c = defaults_for("search", "corollary-b");
  EXPECT_NO_THROW(validate(c));
  c.budget = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = defaults_for("search", "corollary-b");
  c.restarts = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = defaults_for("search", "corollary-b");
  c.tolerances.fd = 0.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = defaults_for("search", "corollary-b");
  c.restart_grid = {1, 30};
  EXPECT_THROW(validate(c), ConfigError);
  c = defaults_for("search", "corollary-b");
  c.tolerances.fd_step = 0.1;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, EchoIsStableAndReloadable) {
  auto c = defaults_for("search", "corollary-b");
  c.seed = 7;
  c.tolerances.fd_step = 1.0 / 3.0 * 1e-5;
  const std::string text = echo(c);
  EXPECT_EQ(text, echo(c));
  const auto back = apply_config_text(defaults_for("search", "corollary-b"), text);
  EXPECT_EQ(echo(back), text);
  EXPECT_EQ(back.tolerances.fd_step, c.tolerances.fd_step);
}

TEST(Formats, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

namespace {

AuditReport sample_report() {
  AuditReport r("sample");
  r.expect("plain", 1.0 / 3.0, 0.0, 1.0, "a = b");
  r.compare("with, comma", 2.5e-17, 1.0, 1e-9, "quote \"inside\", and comma");
  r.record("measured", std::numeric_limits<double>::infinity(), "value");
  r.expect("failed", 3.0, 0.0, 1e-3, "x");
  return r;
}

void expect_same(const std::vector<Check>& got, const AuditReport& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& a = got[i];
    const auto& b = want.checks()[i];
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.anchor, b.anchor);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(format_number(a.computed), format_number(b.computed));
    EXPECT_EQ(format_number(a.expected), format_number(b.expected));
    EXPECT_EQ(format_number(a.tolerance), format_number(b.tolerance));
  }
}

}  // namespace

TEST(Formats, CsvAndRecordsRoundTrip) {
  const auto r = sample_report();
  std::stringstream csv, records;
  write_csv(csv, r);
  write_records(records, r);
  expect_same(read_csv(csv), r);
  expect_same(read_records(records), r);
  EXPECT_EQ(r.counts().total(), r.size());
  EXPECT_FALSE(r.passed());
}

TEST(Formats, TableListsEveryRow) {
  const auto r = sample_report();
  std::ostringstream out;
  write_table(out, r);
  for (const auto& c : r.checks()) EXPECT_NE(out.str().find(c.name), std::string::npos);
  EXPECT_NE(out.str().find("fail"), std::string::npos);
}

TEST(Formats, MatrixRoundTrip) {
  Matrix m(3, 3);
  m << 0, -1.0 / 3.0, 2, 1.0 / 3.0, 0, 1e-300, -2, -1e-300, 0;
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
  std::istringstream bad("total_dim 2\n1 2\n3\n");
  EXPECT_THROW(read_matrix(bad), ContractViolation);
}

TEST(Formats, ManifestCountsAndStableLines) {
  const auto r = sample_report();
  RunManifest m{"audit", "gray", echo(defaults_for("audit", "gray")), kArtifactVersion, 1.5, r.counts()};
  std::ostringstream a, b;
  write_manifest(a, m);
  m.wall_clock_seconds = 99.0;
  write_manifest(b, m);
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line)) {
      if (line.rfind("wall_clock", 0) != 0) out += line + "\n";
    }
    return out;
  };
  EXPECT_NE(a.str(), b.str());
  EXPECT_EQ(strip(a.str()), strip(b.str()));
  EXPECT_NE(a.str().find("fail: 1"), std::string::npos);
}
