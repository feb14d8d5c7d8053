#pragma once

// Theory checking driver: parse -> share -> infer -> check.
//
//   sequential      every stage runs on the calling thread, one command at a
//                   time, with the single-thread kernel
//   parse thread    a dedicated thread parses, copies constants out of the
//                   buffer and hands commands over in order
//   check workers   right-hand-side checks are deferred to N worker threads
//                   running the thread-safe kernel; sharing, inference and
//                   context extension stay on the calling thread
//
// Whatever the mode, the verdict is the same: the failure reported is the
// one with the smallest (file, command) position.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpc {

struct Config {
  bool parse_only = false;
  bool no_check = false;
  bool parse_thread = false;
  // 0 checks on the coordinating thread; N >= 1 uses N check workers.
  unsigned jobs = 0;
  bool eta = false;
  std::optional<std::size_t> step_limit;
  bool stats = false;
  // Seeds random start delays of check tasks; verdicts must not depend on it.
  std::optional<std::uint64_t> seed;
  // Record context extensions in Verdict::trace.
  bool trace = false;
};

struct Source {
  std::string name;
  std::string text;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Source read_source(const std::string& path);

struct Diagnostic {
  std::string file;
  std::size_t file_index = 0;
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t command = 0;
  std::string message;

  /// FILE:LINE:COL: command #K: message
  std::string render() const;
};

struct StageTimes {
  double parse_ms = 0;
  double share_ms = 0;
  double infer_ms = 0;
  double check_ms = 0;
};

struct Verdict {
  // Commands that went through every enabled stage without an error.
  std::size_t commands = 0;
  // Sorted by position; the first entry is the reported failure.
  std::vector<Diagnostic> failures;
  StageTimes times;
  std::size_t tasks_peak = 0;
  std::size_t tasks = 0;
  // Wall time of each deferred check, in command order; sequential checking only.
  std::vector<double> task_ms;
  std::size_t symbols = 0;
  std::size_t rules = 0;
  std::vector<std::string> trace;

  bool ok() const { return failures.empty(); }
  const Diagnostic* failure() const { return failures.empty() ? nullptr : &failures.front(); }
  /// "ok" or the rendered reported failure; identical across modes.
  std::string summary() const;
  /// One `stage=<name> wall_ms=<int>` line per stage, then `tasks_peak=<int>`.
  std::string stats_lines() const;
};

Verdict run_sequential(const Config& cfg, const std::vector<Source>& sources);
Verdict run_parallel_check(const Config& cfg, const std::vector<Source>& sources);
Verdict run_parallel_parse(const Config& cfg, const std::vector<Source>& sources);

/// Picks the strategy from `cfg.parse_thread` and `cfg.jobs`.
Verdict check_theories(const Config& cfg, const std::vector<Source>& sources);

}  // namespace lpc
