#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

/// Number of elements of s inside each block of k consecutive indices.
inline std::vector<int> block_profile(Subset s, std::size_t blocks, std::size_t k) {
  std::vector<int> prof(blocks, 0);
  for (std::size_t i = 0; i < blocks; ++i) prof[i] = subset_size((s >> (i * k)) & full_set(k));
  return prof;
}

}  // namespace detail

/// Pol(p): variable i becomes the block i*k .. i*k+k-1 and z_i^j becomes
/// e_j(block i) / binom(k, j).
template <class T>
BasicMultiAffinePoly<T> polarize(const BasicDensePoly<T>& p, std::size_t k) {
  if (k == 0) throw std::invalid_argument("polarization block size must be positive");
  const std::size_t n = p.n_vars();
  for (std::size_t i = 0; i < n; ++i) {
    if (p.degree(i) > static_cast<int>(k)) {
      throw std::invalid_argument("degree " + std::to_string(p.degree(i)) + " of variable " + std::to_string(i) +
                                  " exceeds polarization degree " + std::to_string(k));
    }
  }
  BasicMultiAffinePoly<T> out(n * k);
  // by_size[j] lists the subsets of {0..k-1} of size j.
  std::vector<std::vector<Subset>> by_size(k + 1);
  for (Subset s = 0; s <= full_set(k); ++s) by_size[static_cast<std::size_t>(subset_size(s))].push_back(s);

  for (const auto& [e, c] : p.terms()) {
    T weight = c;
    for (std::size_t i = 0; i < n; ++i) weight /= T(detail::binomial(static_cast<int>(k), e[i]));
    // Odometer over the product of per-block choices.
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      Subset s = 0;
      for (std::size_t i = 0; i < n; ++i) s |= by_size[static_cast<std::size_t>(e[i])][pick[i]] << (i * k);
      out[s] += weight;
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++pick[i] < by_size[static_cast<std::size_t>(e[i])].size()) break;
        pick[i] = 0;
      }
      if (i == n) break;
    }
  }
  return out;
}

/// Sym: the inverse of polarize. Coefficients sharing a block profile must agree
/// to relative tolerance 1e-9 (exactly in rational mode); they are summed.
template <class T>
BasicDensePoly<T> symmetrize(const BasicMultiAffinePoly<T>& p, std::size_t k) {
  if (k == 0 || p.n_vars() % k != 0) {
    throw std::invalid_argument("cannot split " + std::to_string(p.n_vars()) + " variables into blocks of " +
                                std::to_string(k));
  }
  const std::size_t n = p.n_vars() / k;
  std::map<std::vector<int>, T> sums;
  for (Subset s = 0; s < p.size(); ++s) {
    if (!is_zero(p[s])) sums[detail::block_profile(s, n, k)] += p[s];
  }
  const double scale = std::max(1.0, [&] {
    double m = 0.0;
    for (const T& c : p.coeffs()) m = std::max(m, magnitude(c));
    return m;
  }());
  for (Subset s = 0; s < p.size(); ++s) {
    const auto prof = detail::block_profile(s, n, k);
    auto it = sums.find(prof);
    T expected(0);
    if (it != sums.end()) {
      double count = 1.0;
      for (int j : prof) count *= detail::binomial(static_cast<int>(k), j);
      expected = it->second / T(count);
    }
    const T diff = p[s] - expected;
    const bool ok = std::is_same_v<T, Rational> ? is_zero(diff) : magnitude(diff) <= 1e-9 * scale;
    if (!ok) throw std::invalid_argument("polynomial is not symmetric within its polarization blocks");
  }
  BasicDensePoly<T> out(n, {}, std::vector<int>(n, static_cast<int>(k)));
  for (const auto& [prof, c] : sums) out.add_term(prof, c);
  return out;
}

/// Coefficients of p(x, ..., x), ascending.
template <class T>
std::vector<T> diag_restrict_coeffs(const BasicMultiAffinePoly<T>& p) {
  std::vector<T> c(p.n_vars() + 1, T(0));
  for (Subset s = 0; s < p.size(); ++s) c[static_cast<std::size_t>(subset_size(s))] += p[s];
  return c;
}

template <class T>
std::vector<T> diag_restrict_coeffs(const BasicDensePoly<T>& p) {
  std::vector<T> c;
  for (const auto& [e, v] : p.terms()) {
    std::size_t d = 0;
    for (int k : e) d += static_cast<std::size_t>(k);
    if (c.size() <= d) c.resize(d + 1, T(0));
    c[d] += v;
  }
  return c;
}

inline UniPoly diag_restrict(const MultiAffinePoly& p) { return UniPoly(diag_restrict_coeffs(p)); }
inline UniPoly diag_restrict(const DensePoly& p) { return UniPoly(diag_restrict_coeffs(p)); }

}  // namespace stablecalc
