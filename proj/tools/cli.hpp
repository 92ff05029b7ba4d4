#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stablecalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitVerify = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0, 2 for input errors or 3 for failed checks.
int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SweepConfig {
  std::size_t n = 4;
  std::size_t r_min = 2;
  std::size_t r_max = 8;
  double alpha = 0.2;
  double eps = 0.05;
  std::size_t per_r = 3;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: STABLE_CALC_THREADS or hardware concurrency
};

/// Column header of the sweep CSV.
std::string sweep_header();

/// One row per (r, sample) instance, in instance-id order; rows are computed
/// on a worker pool and are byte-identical for a fixed config.
void run_sweep(const SweepConfig& cfg, std::ostream& out);

/// Worker count: STABLE_CALC_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t pool_size();

}  // namespace stablecalc::cli
