#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stablecalc/matrix_polys.hpp"

namespace stablecalc {

/// Assignment of each index to one of r blocks, with its quality
/// max over nonempty blocks of lambda_max of the diagonal block.
struct Paving {
  std::vector<int> assignment;
  std::size_t r = 0;
  double lambda_max = 0.0;
};

/// Largest eigenvalue over the diagonal blocks of a given assignment.
double paving_value(const HermitianMatrix& a, const std::vector<int>& assignment, std::size_t r);

/// Exhaustive search for the best r-paving (balanced blocks when equal_size).
/// Ties go to the lexicographically smallest assignment. Guarded by
/// r^n <= 2^24 and n <= 20.
Paving paving_search(const HermitianMatrix& a, std::size_t r, bool equal_size = false);

struct PavingBoundReport {
  std::size_t n = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  /// 4 r^{-1/4} + alpha, flagged trivial when above 1.
  double simple_bound = 0.0;
  bool simple_trivial = false;
  /// paving_gamma(1/r, alpha).
  double gamma_bound = 0.0;
  /// sqrt(alpha) + sqrt(1/r) <= 1.
  bool within_proviso = false;
  std::optional<Paving> best_found;
  /// Largest root of the expected characteristic polynomial over block_diag(A, r).
  std::optional<double> expected_root;
};

/// Bounds for an r-paving of the PSD contraction A, plus exhaustive search and
/// the expected-characteristic-polynomial root when their size guards allow.
/// Throws std::invalid_argument when A is not a PSD contraction, when the
/// largest diagonal entry is >= 1, or when equal_size blocks cannot be formed.
PavingBoundReport paving_certificate(const HermitianMatrix& a, std::size_t r, bool equal_size = false);

/// Largest root of E chi[B(S)] with B = block_diag(A, r) and S drawn from the
/// (equal-size) partition measure. Guarded by n*r <= 20 measure variables.
double expected_charpoly_paving_root(const HermitianMatrix& a, std::size_t r, bool equal_size = false);

}  // namespace stablecalc
