#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace wmr::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParameterError = 2,
  kCheckFailed = 3,
  kResourceGuard = 4,
};

struct RunConfig {
  std::string subcommand;
  int K = 0;
  std::string r;
  int eta = 1;
  std::uint64_t seed = 1;
  /// Unset means the subcommand default (modular for verify-rank and
  /// lemma-tests, float for simulate).
  std::optional<std::string> mode;
  double tol = 1e-8;
  int trials = 1;
  std::string grid_step = "1/20";
  std::int64_t N = 1;
  std::optional<int> t;
  std::string out;
  /// Unset means csv for bounds, json otherwise.
  std::optional<std::string> format;
  bool oracle = false;
  double max_error = 1e-6;
  double noise = 0.0;
  int digits = 12;
  std::uint64_t max_block_length = 20000;
};

/// Reads WMR_MAX_BLOCK_LENGTH when set.
std::uint64_t max_block_length_from_env(std::uint64_t fallback);

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scheme(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify_rank(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_converse(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_lemma_tests(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs config.subcommand, writing to config.out (or `out` when empty) and
/// mapping library exceptions to exit codes.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wmr::cli
