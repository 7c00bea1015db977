#pragma once

#include "choice_attach/model.hpp"
#include "choice_attach/recurrence.hpp"
#include "choice_attach/table.hpp"
#include "choice_attach/tree_simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace choice_attach::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kAnalyticFailure = 3,
  kResourceCap = 4,
};

/// Environment variable naming a directory that receives every output file.
inline constexpr const char* kOutDirEnv = "CHOICE_ATTACH_OUT";

struct RunConfig {
  std::string command;
  int r = 2;
  int s = 2;
  Index kmax = 64;
  Time steps = 100'000;
  int seeds = 1;
  std::uint64_t base_seed = 1;
  double tol = kDefaultTolerance;
  SamplingMode mode = SamplingMode::WithReplacement;
  std::string format = "csv";
  std::string out;
  Index k_search_max = 1'000'000;
  std::optional<int> r_cap;
  /// Empty means powers of ten plus the final time.
  std::vector<Time> checkpoints;

  ModelParams params() const { return make_params(r, s, mode); }
  /// Throws ConfigError on invalid combinations for `command`.
  void validate() const;
  /// Fields that affect the output of `command`, in a stable order.
  std::vector<std::pair<std::string, std::string>> describe() const;
  /// A command line that regenerates the same output.
  std::string command_line() const;
};

/// Result tables per command; exposed for tests.
Table cmd_pk(const RunConfig& config);
Table cmd_pstar(const RunConfig& config);
Table cmd_threshold(const RunConfig& config);
Table cmd_cutoff(const RunConfig& config);
Table cmd_classify(const RunConfig& config);
Table cmd_simulate(const RunConfig& config);
Table cmd_compare(const RunConfig& config);

/// Parses `args` (without the program name), runs the command and writes
/// the output. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace choice_attach::cli
