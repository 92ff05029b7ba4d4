#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stablecalc {

struct VerifyConfig {
  /// Largest number of variables used by the randomized suites.
  std::size_t max_n = 6;
  std::uint64_t seed = 1;
  /// Random instances per suite.
  std::size_t samples = 50;
};

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// First failure, empty when the suite passed.
  std::string detail;
  bool passed() const { return failed == 0; }
};

/// Randomized oracle suites: convolution vs definition (exact and float), flip
/// transport, free convolution vs polarized convolution, Lieb-Sokal certificate
/// soundness, expected characteristic polynomial vs enumeration, paving search
/// vs bound, mixed characteristic roots vs (1+sqrt(eps))^2, and the potential
/// bound for PSD contractions.
std::vector<SuiteResult> run_verification(const VerifyConfig& cfg);

}  // namespace stablecalc
