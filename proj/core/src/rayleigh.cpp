#include "stablecalc/rayleigh.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "stablecalc/polarization.hpp"
#include "stablecalc/stable_calculus.hpp"

namespace stablecalc {

namespace {

void guard_vars(std::size_t vars) {
  if (vars > MultiAffinePoly::kMaxVars) {
    throw std::length_error("measure over " + std::to_string(vars) + " variables exceeds the guard of " +
                            std::to_string(MultiAffinePoly::kMaxVars));
  }
}

double ipow(double base, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

SRMeasure::SRMeasure(MultiAffinePoly gen, std::string label) : gen_(std::move(gen)), label_(std::move(label)) {
  double total = 0.0;
  for (Subset s = 0; s < gen_.size(); ++s) {
    if (gen_[s] < -1e-12) {
      throw std::invalid_argument("measure '" + label_ + "' has negative mass " + std::to_string(gen_[s]) +
                                  " at subset " + std::to_string(s));
    }
    total += gen_[s];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("measure '" + label_ + "' has total mass " + std::to_string(total));
  }
}

SRMeasure partition_measure(std::size_t n, std::size_t r) {
  if (r == 0) throw std::invalid_argument("partition measure needs at least one block");
  guard_vars(n * r);
  MultiAffinePoly gen(n * r);
  const double w = 1.0 / ipow(static_cast<double>(r), n);
  std::vector<std::size_t> block(n, 0);
  while (true) {
    Subset s = 0;
    for (std::size_t i = 0; i < n; ++i) s |= singleton(block[i] * n + i);
    gen[s] += w;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++block[i] < r) break;
      block[i] = 0;
    }
    if (i == n) break;
  }
  return SRMeasure(std::move(gen), "partition(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")");
}

SRMeasure equal_size_partition_measure(std::size_t m, std::size_t r) {
  if (r == 0) throw std::invalid_argument("partition measure needs at least one block");
  const std::size_t items = r * m;
  guard_vars(items * r);
  // The Hadamard product of prod_i sum_j z_{j,i} with prod_j e_m(block j) is the
  // indicator of balanced assignments; enumerate those directly.
  MultiAffinePoly gen(items * r);
  std::vector<std::size_t> block(items, 0);
  std::vector<std::size_t> fill(r, 0);
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t i, Subset s) -> void {
    if (i == items) {
      gen[s] = 1.0;
      ++count;
      return;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (fill[j] == m) continue;
      ++fill[j];
      self(self, i + 1, s | singleton(j * items + i));
      --fill[j];
    }
  };
  rec(rec, 0, 0);
  gen *= 1.0 / static_cast<double>(count);
  return SRMeasure(std::move(gen),
                   "equal_partition(m=" + std::to_string(m) + ",r=" + std::to_string(r) + ")");
}

SRMeasure product_measure(const std::vector<double>& p) {
  guard_vars(p.size());
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("product measure probability outside [0, 1]");
  }
  MultiAffinePoly gen = MultiAffinePoly::constant(0, 1.0);
  for (double v : p) gen = ma_tensor(gen, MultiAffinePoly(1, {1.0 - v, v}));
  return SRMeasure(std::move(gen), "product");
}

SRMeasure determinantal_measure(const HermitianMatrix& k) {
  const std::size_t n = k.n();
  guard_vars(n);
  const auto ev = eigenvalues(k);
  if (!ev.empty() && (ev.front() < -1e-10 || ev.back() > 1.0 + 1e-10)) {
    throw std::invalid_argument("determinantal kernel spectrum leaves [0, 1]");
  }
  std::vector<double> g(std::size_t{1} << n);
  for (Subset s = 0; s < g.size(); ++s) {
    if (s == 0) {
      g[s] = 1.0;
      continue;
    }
    const auto idx = subset_indices(s);
    Eigen::MatrixXcd sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = k(idx[r], idx[c]);
    }
    g[s] = sub.partialPivLu().determinant().real();
  }
  // P(S = T) = sum over S' containing T of (-1)^{|S' \ T|} det K_{S'}.
  for (std::size_t i = 0; i < n; ++i) {
    const Subset bit = singleton(i);
    for (Subset t = 0; t < g.size(); ++t) {
      if (!(t & bit)) g[t] -= g[t | bit];
    }
  }
  // Exact zeros (e.g. wrong-size sets under a projection kernel) come out as
  // rounding residue of the alternating sum; clear it so degrees stay exact.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(g.size());
  for (double& v : g) {
    if (std::abs(v) <= noise) v = 0.0;
  }
  return SRMeasure(MultiAffinePoly(n, std::move(g)), "determinantal");
}

std::vector<double> marginals(const SRMeasure& mu) {
  std::vector<double> out(mu.n(), 0.0);
  for (Subset s = 0; s < mu.gen().size(); ++s) {
    if (mu.prob(s) == 0.0) continue;
    for (std::size_t i : subset_indices(s)) out[i] += mu.prob(s);
  }
  return out;
}

bool is_homogeneous(const SRMeasure& mu, double tol) {
  int size = -1;
  for (Subset s : support(mu, tol)) {
    if (size < 0) size = subset_size(s);
    if (subset_size(s) != size) return false;
  }
  return true;
}

std::vector<Subset> support(const SRMeasure& mu, double tol) {
  std::vector<Subset> out;
  for (Subset s = 0; s < mu.gen().size(); ++s) {
    if (mu.prob(s) > tol) out.push_back(s);
  }
  return out;
}

UniPoly expected_charpoly(const SRMeasure& mu, const HermitianMatrix& a) {
  if (a.n() != mu.n()) {
    throw std::invalid_argument("measure over " + std::to_string(mu.n()) + " items, matrix of size " +
                                std::to_string(a.n()));
  }
  return diag_restrict(apply_diffop(ma_flip(mu.gen()), char_multiaffine(a)));
}

UniPoly expected_charpoly_oracle(const SRMeasure& mu, const HermitianMatrix& a) {
  if (a.n() != mu.n()) {
    throw std::invalid_argument("measure over " + std::to_string(mu.n()) + " items, matrix of size " +
                                std::to_string(a.n()));
  }
  if (mu.n() > 12) throw std::length_error("enumeration oracle limited to 12 items");
  UniPoly acc;
  for (Subset s = 0; s < mu.gen().size(); ++s) {
    if (mu.prob(s) == 0.0) continue;
    acc += charpoly(principal_submatrix(a, s)) * mu.prob(s);
  }
  return acc;
}

}  // namespace stablecalc
