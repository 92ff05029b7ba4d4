#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/polarization.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

/// Multiaffine convolution: (p*q)_S = sum over R cup T = [n], R cap T = S of p_R q_T.
///
/// For each R with p_R != 0 the partners are T = ([n] \ R) cup U with U inside R,
/// giving Theta(3^n) work overall.
template <class T>
BasicMultiAffinePoly<T> convolve(const BasicMultiAffinePoly<T>& p, const BasicMultiAffinePoly<T>& q) {
  p.check_same(q);
  BasicMultiAffinePoly<T> out(p.n_vars());
  const Subset full = p.full_mask();
  for (Subset r = 0; r < p.size(); ++r) {
    if (is_zero(p[r])) continue;
    const Subset rest = full ^ r;
    for_each_submask(r, [&](Subset u) {
      if (!is_zero(q[rest | u])) out[u] += p[r] * q[rest | u];
    });
  }
  return out;
}

/// Convolution straight from its defining identity (p*q)(2z) = d^[n](pq)(z).
template <class T>
BasicMultiAffinePoly<T> convolve_def_oracle(const BasicMultiAffinePoly<T>& p, const BasicMultiAffinePoly<T>& q) {
  p.check_same(q);
  const auto prod = dense_mul(to_dense(p), to_dense(q));
  const std::vector<int> ones(p.n_vars(), 1);
  const auto diff = dense_diffop<T>(ones, prod);
  return to_multiaffine(dense_scale_vars(diff, T(T(1) / T(2))));
}

/// q(d)p: r_S = sum over T disjoint from S of q_T p_{S cup T}.
template <class T>
BasicMultiAffinePoly<T> apply_diffop(const BasicMultiAffinePoly<T>& q, const BasicMultiAffinePoly<T>& p) {
  p.check_same(q);
  BasicMultiAffinePoly<T> out(p.n_vars());
  const Subset full = p.full_mask();
  for (Subset t = 0; t < q.size(); ++t) {
    if (is_zero(q[t])) continue;
    for_each_submask(full ^ t, [&](Subset s) {
      if (!is_zero(p[s | t])) out[s] += q[t] * p[s | t];
    });
  }
  return out;
}

/// True when a lies above the roots of the real stable polynomial p, i.e.
/// p(a + t) != 0 for every t in the closed positive orthant.
///
/// After fixing the sign so the top-degree coefficients sum positive, the test
/// is that every nonvanishing partial derivative d^S p is positive at a, with
/// positivity meaning value > tol * ||d^S p||_1. Throws for the zero polynomial.
bool above_roots(const MultiAffinePoly& p, std::span<const double> a, double tol = kTolerance);
bool above_roots(const DensePoly& p, std::span<const double> a, double tol = kTolerance);

/// Barrier potential d_k p / p at a. Throws std::domain_error when p(a) is not
/// safely positive (a is not above the roots).
double potential(const MultiAffinePoly& p, std::span<const double> a, std::size_t k);
double potential(const DensePoly& p, std::span<const double> a, std::size_t k);
/// Directional potential D_v p / p at a.
double potential(const MultiAffinePoly& p, std::span<const double> a, std::span<const double> v);
double potential(const DensePoly& p, std::span<const double> a, std::span<const double> v);

/// inf { s : s*1 is above the roots of p } by bisection with strict sign tests.
/// Constants return -infinity. Throws std::runtime_error when no bracket is
/// found within 60 doublings.
double diag_threshold(const MultiAffinePoly& p);
double diag_threshold(const DensePoly& p);

/// smax_phi(p) = largest root of p' - phi p.
double uni_smax(const UniPoly& p, double phi);

/// Finite free additive convolution of two monic degree-d polynomials:
/// (1/d!) sum_k p^(k)(x) q^(d-k)(0). Well-definedness is checked by recomputing
/// with y = 1 and comparing against the shifted result.
UniPoly free_additive_convolution(const UniPoly& p, const UniPoly& q, int d);

}  // namespace stablecalc
