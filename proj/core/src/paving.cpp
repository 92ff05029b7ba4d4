#include "stablecalc/paving.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stablecalc/lieb_sokal.hpp"
#include "stablecalc/rayleigh.hpp"

namespace stablecalc {

namespace {

constexpr std::size_t kMaxSearchVars = 20;
constexpr double kMaxAssignments = 16777216.0;  // 2^24
constexpr std::size_t kMaxMeasureVars = 20;

void check_blocks(std::size_t n, std::size_t r, bool equal_size) {
  if (r == 0) throw std::invalid_argument("a paving needs at least one block");
  if (equal_size && n % r != 0) {
    throw std::invalid_argument("dimension " + std::to_string(n) + " is not divisible into " + std::to_string(r) +
                                " equal blocks");
  }
}

bool search_feasible(std::size_t n, std::size_t r) {
  return n <= kMaxSearchVars && std::pow(static_cast<double>(r), static_cast<double>(n)) <= kMaxAssignments;
}

// Lazily evaluated lambda_max of every principal submatrix, NaN = unknown.
class BlockCache {
 public:
  explicit BlockCache(const HermitianMatrix& a)
      : a_(a), cache_(std::size_t{1} << a.n(), std::numeric_limits<double>::quiet_NaN()) {}

  double operator()(Subset s) {
    double& v = cache_[s];
    if (std::isnan(v)) v = lambda_max(principal_submatrix(a_, s));
    return v;
  }

 private:
  const HermitianMatrix& a_;
  std::vector<double> cache_;
};

}  // namespace

double paving_value(const HermitianMatrix& a, const std::vector<int>& assignment, std::size_t r) {
  if (assignment.size() != a.n()) throw std::invalid_argument("assignment length differs from the dimension");
  std::vector<Subset> blocks(r, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0 || static_cast<std::size_t>(assignment[i]) >= r) {
      throw std::invalid_argument("block id out of range");
    }
    blocks[static_cast<std::size_t>(assignment[i])] |= singleton(i);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Subset b : blocks) {
    if (b != 0) best = std::max(best, lambda_max(principal_submatrix(a, b)));
  }
  return best;
}

Paving paving_search(const HermitianMatrix& a, std::size_t r, bool equal_size) {
  const std::size_t n = a.n();
  check_blocks(n, r, equal_size);
  if (n == 0) throw std::invalid_argument("paving of an empty matrix");
  if (!search_feasible(n, r)) {
    throw std::length_error("exhaustive paving search over " + std::to_string(r) + "^" + std::to_string(n) +
                            " assignments exceeds the 2^24 guard");
  }
  BlockCache cache(a);
  const std::size_t cap = equal_size ? n / r : n;
  std::vector<int> cur(n, 0);
  std::vector<Subset> blocks(r, 0);
  std::vector<std::size_t> fill(r, 0);
  Paving best;
  best.r = r;
  best.lambda_max = std::numeric_limits<double>::infinity();
  // Depth-first in lexicographic order; a strictly better value (beyond 1e-12)
  // is required to replace the incumbent, so ties keep the earliest assignment.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      double v = -std::numeric_limits<double>::infinity();
      for (Subset b : blocks) {
        if (b != 0) v = std::max(v, cache(b));
      }
      if (v < best.lambda_max - 1e-12) {
        best.lambda_max = v;
        best.assignment = cur;
      }
      return;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (fill[j] == cap) continue;
      cur[i] = static_cast<int>(j);
      blocks[j] |= singleton(i);
      ++fill[j];
      self(self, i + 1);
      --fill[j];
      blocks[j] ^= singleton(i);
    }
  };
  rec(rec, 0);
  return best;
}

double expected_charpoly_paving_root(const HermitianMatrix& a, std::size_t r, bool equal_size) {
  const std::size_t n = a.n();
  check_blocks(n, r, equal_size);
  if (n * r > kMaxMeasureVars) {
    throw std::length_error("expected characteristic polynomial over " + std::to_string(n * r) +
                            " measure variables exceeds the guard of " + std::to_string(kMaxMeasureVars));
  }
  const SRMeasure mu = equal_size ? equal_size_partition_measure(n / r, r) : partition_measure(n, r);
  return uni_max_root(expected_charpoly(mu, block_diag(a, r)));
}

PavingBoundReport paving_certificate(const HermitianMatrix& a, std::size_t r, bool equal_size) {
  const std::size_t n = a.n();
  if (n == 0) throw std::invalid_argument("paving of an empty matrix");
  check_blocks(n, r, equal_size);
  const auto ev = eigenvalues(a);
  if (ev.front() < -1e-10) throw std::invalid_argument("matrix is not positive semidefinite");
  if (ev.back() > 1.0 + 1e-10) throw std::invalid_argument("matrix norm exceeds 1");
  PavingBoundReport rep;
  rep.n = n;
  rep.r = r;
  rep.alpha = std::max(0.0, max_diagonal(a));
  if (rep.alpha >= 1.0) throw std::invalid_argument("largest diagonal entry must be below 1");
  const double eps = 1.0 / static_cast<double>(r);
  rep.simple_bound = paving_simple_bound(eps, rep.alpha);
  rep.simple_trivial = rep.simple_bound > 1.0;
  rep.gamma_bound = paving_gamma(eps, rep.alpha);
  rep.within_proviso = std::sqrt(rep.alpha) + std::sqrt(eps) <= 1.0;
  if (search_feasible(n, r)) rep.best_found = paving_search(a, r, equal_size);
  if (n * r <= kMaxMeasureVars) rep.expected_root = expected_charpoly_paving_root(a, r, equal_size);
  return rep;
}

}  // namespace stablecalc
