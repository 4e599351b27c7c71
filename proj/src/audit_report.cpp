#include "oacs/audit_report.hpp"

#include <algorithm>
#include <cmath>

namespace oacs {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::mismatch:
      return "mismatch";
    case Verdict::fail:
      return "fail";
    case Verdict::recorded:
      return "recorded";
  }
  return "unknown";
}

const Check& AuditReport::push(std::string name, double computed, double expected,
                               double tolerance, std::string anchor, bool asserted) {
  Check c;
  c.name = std::move(name);
  c.computed = computed;
  c.expected = expected;
  c.tolerance = tolerance;
  c.anchor = std::move(anchor);
  c.asserted = asserted;
  // NaN never passes.
  const bool within = std::abs(computed - expected) <= tolerance;
  if (within) {
    c.verdict = Verdict::pass;
  } else {
    c.verdict = asserted ? Verdict::fail : Verdict::mismatch;
  }
  checks_.push_back(std::move(c));
  return checks_.back();
}

const Check& AuditReport::expect(std::string name, double computed, double expected,
                                 double tolerance, std::string anchor) {
  return push(std::move(name), computed, expected, tolerance, std::move(anchor), true);
}

const Check& AuditReport::compare(std::string name, double computed, double expected,
                                  double tolerance, std::string anchor) {
  return push(std::move(name), computed, expected, tolerance, std::move(anchor), false);
}

const Check& AuditReport::record(std::string name, double value, std::string anchor) {
  Check c;
  c.name = std::move(name);
  c.computed = value;
  c.expected = std::nan("");
  c.tolerance = std::nan("");
  c.verdict = Verdict::recorded;
  c.anchor = std::move(anchor);
  c.asserted = false;
  checks_.push_back(std::move(c));
  return checks_.back();
}

void AuditReport::append(const AuditReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool AuditReport::passed() const {
  return std::none_of(checks_.begin(), checks_.end(),
                      [](const Check& c) { return c.verdict == Verdict::fail; });
}

VerdictCounts AuditReport::counts() const {
  VerdictCounts n;
  for (const auto& c : checks_) {
    switch (c.verdict) {
      case Verdict::pass:
        ++n.pass;
        break;
      case Verdict::mismatch:
        ++n.mismatch;
        break;
      case Verdict::fail:
        ++n.fail;
        break;
      case Verdict::recorded:
        ++n.recorded;
        break;
    }
  }
  return n;
}

std::optional<Check> AuditReport::find(std::string_view name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return c;
  }
  return std::nullopt;
}

double AuditReport::max_deviation(std::string_view prefix) const {
  double worst = 0.0;
  for (const auto& c : checks_) {
    if (c.verdict == Verdict::recorded) continue;
    if (std::string_view(c.name).substr(0, prefix.size()) != prefix) continue;
    const double d = std::abs(c.computed - c.expected);
    if (std::isnan(d)) return d;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace oacs
