#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ricciflow::cli {

enum class Command { info, nice, ricci, stably_diagonal, soliton, flow, catalog };
enum class Format { json, csv };

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kIoError = 3;

struct RunConfig {
  Command command = Command::info;
  /// `catalog:<name>` or a path to an algebra JSON file; may be empty for `catalog`.
  std::string input;
  /// `canonical`, `diag:a1,a2,...`, or a path to a metric JSON file.
  std::string metric = "canonical";
  double t_max = 1.0;
  double dt_init = 0.0;
  double tol = 1e-10;
  int samples = 50;
  std::uint64_t seed = 1;
  /// Empty means stdout.
  std::string output;
  Format format = Format::json;
};

/// Executes one command. Reports go to `output` (or `out`); diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `argv` into a RunConfig and runs it. `RICCIFLOW_LOG` sets the log
/// level (trace, debug, info, warn, error, off).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ricciflow::cli
