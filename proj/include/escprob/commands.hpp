#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace escprob::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadInput = 2,
  kSolverFailure = 3,
  kUnsupported = 4,
};

/// Integrand evaluations above which the deterministic solver warns.
inline constexpr std::uint64_t kEvaluationWarning = 10'000'000;

struct CommonOptions {
  std::optional<double> tol;
  std::optional<std::size_t> max_subdivisions;
  std::uint64_t particles = 1'000'000;
  std::uint64_t seed = 0;
  int runs = 1;
  int workers = 0;
  std::optional<std::string> output;
};

struct EscapeArgs {
  std::string geometry;
  std::string distribution;
  std::string method = "det";  // det | mc | both
  CommonOptions common;
};

struct TransitionArgs {
  std::string source;
  std::string target;
  std::string distribution;
  std::string method = "det";
  CommonOptions common;
};

struct BenchArgs {
  std::uint64_t particles = 1'000'000;
  std::uint64_t seed = 0;
  int runs = 1;
  std::optional<double> tol;
  std::optional<std::string> output;
};

/// Each command writes its JSON document to `common.output` (or `out` when
/// unset) and diagnostics to `err`; the return value is the process exit code.
int cmd_escape(const EscapeArgs& args, std::ostream& out, std::ostream& err);
int cmd_transition(const TransitionArgs& args, std::ostream& out, std::ostream& err);
/// Writes the machine-readable table to `output` (if set) and the text
/// rendering to `out`.
int cmd_bench_table3(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace escprob::cli
