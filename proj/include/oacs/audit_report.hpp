#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oacs {

/// pass/mismatch/fail follow |computed - expected| <= tolerance; a mismatch is
/// an out-of-tolerance row that is recorded but not asserted. `recorded` rows
/// are plain measurements with no expected value.
enum class Verdict { pass, mismatch, fail, recorded };

std::string_view to_string(Verdict v);

struct Check {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  std::string anchor;  // formula or identity the row checks
  bool asserted = true;
};

struct VerdictCounts {
  std::size_t pass = 0;
  std::size_t mismatch = 0;
  std::size_t fail = 0;
  std::size_t recorded = 0;

  std::size_t total() const { return pass + mismatch + fail + recorded; }
};

class AuditReport {
 public:
  AuditReport() = default;
  explicit AuditReport(std::string title) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }

  // Asserted comparison; verdict is pass or fail.
  const Check& expect(std::string name, double computed, double expected, double tolerance,
                      std::string anchor);

  // Recorded comparison; verdict is pass or mismatch and never fails the report.
  const Check& compare(std::string name, double computed, double expected, double tolerance,
                       std::string anchor);

  // Measurement without an expected value.
  const Check& record(std::string name, double value, std::string anchor);

  void append(const AuditReport& other);

  const std::vector<Check>& checks() const { return checks_; }
  std::size_t size() const { return checks_.size(); }

  // True iff no asserted check failed.
  bool passed() const;

  VerdictCounts counts() const;

  // First check with the given name.
  std::optional<Check> find(std::string_view name) const;

  // Largest |computed - expected| over checks whose name starts with prefix.
  double max_deviation(std::string_view prefix) const;

 private:
  const Check& push(std::string name, double computed, double expected, double tolerance,
                    std::string anchor, bool asserted);

  std::string title_;
  std::vector<Check> checks_;
};

}  // namespace oacs
