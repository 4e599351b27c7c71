#pragma once

#include <iosfwd>

namespace oacs {

/// Entry point of the `oacs` tool:
///   oacs audit {gray|lemma2|lemma5|ricci-star|curvature}
///   oacs nijenhuis {s2|s6-octonion|product|gauged}
///   oacs search {corollary-b|s6}
/// with --config <path>, --seed <u64>, --format <table|csv|records>, --out <dir>.
///
/// Without --config the built-in defaults of the command are used, or
/// $OACS_CONFIG_DIR/<command>-<target>.yaml when that variable is set and the
/// file exists. Exit codes: 0 completed with every asserted check passing,
/// 1 an asserted check failed (or the run could not complete), 2 usage or
/// config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oacs
