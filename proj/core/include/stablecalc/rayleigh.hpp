#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stablecalc/matrix_polys.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

/// Probability measure on subsets of [n], held as its generating polynomial
/// sum_S mu(S) z^S. Construction rejects coefficients below -1e-12 and total
/// mass differing from 1 by more than 1e-9.
class SRMeasure {
 public:
  SRMeasure(MultiAffinePoly gen, std::string label);

  const MultiAffinePoly& gen() const { return gen_; }
  const std::string& label() const { return label_; }
  std::size_t n() const { return gen_.n_vars(); }
  double prob(Subset s) const { return gen_[s]; }

 private:
  MultiAffinePoly gen_;
  std::string label_;
};

/// Uniform measure on assignments of n items to r blocks. Variable (item i,
/// block j) has index j*n + i, matching block_diag(A, r).
SRMeasure partition_measure(std::size_t n, std::size_t r);

/// Uniform measure on partitions of r*m items into r blocks of exactly m items,
/// with the same (item, block) indexing over r*m items.
SRMeasure equal_size_partition_measure(std::size_t m, std::size_t r);

/// Independent Bernoulli(p_i) inclusions.
SRMeasure product_measure(const std::vector<double>& p);

/// Determinantal measure with marginal kernel K, 0 <= K <= I; generating
/// polynomial det[diag(z) K + I - K].
SRMeasure determinantal_measure(const HermitianMatrix& k);

/// P(i in S) = d_i gen at the all-ones point.
std::vector<double> marginals(const SRMeasure& mu);

/// True when every set in the support has the same size.
bool is_homogeneous(const SRMeasure& mu, double tol = 1e-12);

/// Sets carrying probability above tol, in increasing bitmask order.
std::vector<Subset> support(const SRMeasure& mu, double tol = 1e-12);

/// E chi[A(S)] computed as flip(gen)(d) det[Z - A] restricted to Z = xI.
UniPoly expected_charpoly(const SRMeasure& mu, const HermitianMatrix& a);

/// Direct sum over subsets of mu(S) chi[A(S)], chi of the empty matrix being 1.
UniPoly expected_charpoly_oracle(const SRMeasure& mu, const HermitianMatrix& a);

}  // namespace stablecalc
