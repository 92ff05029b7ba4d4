#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stablecalc/scalar.hpp"
#include "stablecalc/subset.hpp"

namespace stablecalc {

/// Polynomial of degree at most one in each of n variables.
///
/// Coefficients live in a dense table of length 2^n; entry S is the coefficient
/// of z^S = prod_{i in S} z_i. The table is the only state, so copies are cheap
/// value snapshots and every free function below is pure.
template <class T>
class BasicMultiAffinePoly {
 public:
  using value_type = T;

  /// Memory guard for the dense table.
  static constexpr std::size_t kMaxVars = 26;
  /// Exact rationals are only offered for small tables.
  static constexpr std::size_t kMaxExactVars = 12;

  BasicMultiAffinePoly() : BasicMultiAffinePoly(0) {}

  explicit BasicMultiAffinePoly(std::size_t n_vars)
      : n_vars_(checked_vars(n_vars)), coeffs_(std::size_t{1} << n_vars, T(0)) {}

  BasicMultiAffinePoly(std::size_t n_vars, std::vector<T> coeffs)
      : n_vars_(checked_vars(n_vars)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << n_vars_)) {
      throw std::invalid_argument("coefficient table has length " + std::to_string(coeffs_.size()) +
                                  ", expected 2^" + std::to_string(n_vars_));
    }
    for (const T& c : coeffs_) {
      if (!ScalarTraits<T>::is_finite(c)) throw std::invalid_argument("non-finite coefficient");
    }
  }

  static BasicMultiAffinePoly constant(std::size_t n_vars, const T& c) {
    BasicMultiAffinePoly p(n_vars);
    p.coeffs_[0] = c;
    return p;
  }

  static BasicMultiAffinePoly monomial(std::size_t n_vars, Subset s, const T& c = T(1)) {
    BasicMultiAffinePoly p(n_vars);
    p.check_subset(s);
    p.coeffs_[s] = c;
    return p;
  }

  static BasicMultiAffinePoly variable(std::size_t n_vars, std::size_t i) {
    if (i >= n_vars) throw std::out_of_range("variable index out of range");
    return monomial(n_vars, singleton(i));
  }

  std::size_t n_vars() const { return n_vars_; }
  std::size_t size() const { return coeffs_.size(); }
  Subset full_mask() const { return full_set(n_vars_); }

  const T& operator[](Subset s) const { return coeffs_[s]; }
  T& operator[](Subset s) { return coeffs_[s]; }

  const T& coeff(Subset s) const {
    check_subset(s);
    return coeffs_[s];
  }

  std::span<const T> coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return stablecalc::is_zero(c); });
  }

  /// True when some term with nonzero coefficient contains variable i.
  bool depends_on(std::size_t i) const {
    for (Subset s = 0; s < coeffs_.size(); ++s) {
      if (contains(s, i) && !stablecalc::is_zero(coeffs_[s])) return true;
    }
    return false;
  }

  /// Largest |S| carrying a nonzero coefficient, or -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (Subset s = 0; s < coeffs_.size(); ++s) {
      if (!stablecalc::is_zero(coeffs_[s])) d = std::max(d, subset_size(s));
    }
    return d;
  }

  double l1_norm() const {
    double acc = 0.0;
    for (const T& c : coeffs_) acc += magnitude(c);
    return acc;
  }

  BasicMultiAffinePoly& operator+=(const BasicMultiAffinePoly& o) {
    check_same(o);
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += o.coeffs_[s];
    return *this;
  }
  BasicMultiAffinePoly& operator-=(const BasicMultiAffinePoly& o) {
    check_same(o);
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= o.coeffs_[s];
    return *this;
  }
  BasicMultiAffinePoly& operator*=(const T& k) {
    for (T& c : coeffs_) c *= k;
    return *this;
  }

  friend BasicMultiAffinePoly operator+(BasicMultiAffinePoly a, const BasicMultiAffinePoly& b) { return a += b; }
  friend BasicMultiAffinePoly operator-(BasicMultiAffinePoly a, const BasicMultiAffinePoly& b) { return a -= b; }
  friend BasicMultiAffinePoly operator*(BasicMultiAffinePoly a, const T& k) { return a *= k; }
  friend BasicMultiAffinePoly operator*(const T& k, BasicMultiAffinePoly a) { return a *= k; }

  friend bool operator==(const BasicMultiAffinePoly& a, const BasicMultiAffinePoly& b) {
    return a.n_vars_ == b.n_vars_ && a.coeffs_ == b.coeffs_;
  }

  void check_same(const BasicMultiAffinePoly& o) const {
    if (o.n_vars_ != n_vars_) {
      throw std::invalid_argument("dimension mismatch: " + std::to_string(n_vars_) + " vs " +
                                  std::to_string(o.n_vars_) + " variables");
    }
  }

 private:
  static std::size_t checked_vars(std::size_t n) {
    if (n > kMaxVars) {
      throw std::length_error("multiaffine polynomial over " + std::to_string(n) +
                              " variables exceeds the memory guard of " + std::to_string(kMaxVars));
    }
    if constexpr (std::is_same_v<T, Rational>) {
      if (n > kMaxExactVars) {
        throw std::length_error("exact rational mode supports at most " + std::to_string(kMaxExactVars) +
                                " variables");
      }
    }
    return n;
  }

  void check_subset(Subset s) const {
    if (s > full_set(n_vars_)) throw std::out_of_range("subset outside the ambient variable set");
  }

  std::size_t n_vars_;
  std::vector<T> coeffs_;
};

using MultiAffinePoly = BasicMultiAffinePoly<double>;
using ExactMultiAffinePoly = BasicMultiAffinePoly<Rational>;

/// Evaluates p at x by folding one variable at a time, O(2^n).
template <class T>
T ma_eval(const BasicMultiAffinePoly<T>& p, std::span<const std::type_identity_t<T>> x) {
  if (x.size() != p.n_vars()) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                                std::to_string(p.n_vars()) + " variables");
  }
  std::vector<T> work(p.coeffs().begin(), p.coeffs().end());
  std::size_t len = work.size();
  for (std::size_t i = p.n_vars(); i-- > 0;) {
    len >>= 1;
    for (std::size_t s = 0; s < len; ++s) work[s] += x[i] * work[s + len];
  }
  return work[0];
}

template <class T>
BasicMultiAffinePoly<T> ma_partial(const BasicMultiAffinePoly<T>& p, std::size_t i) {
  if (i >= p.n_vars()) throw std::out_of_range("partial derivative index out of range");
  BasicMultiAffinePoly<T> out(p.n_vars());
  const Subset bit = singleton(i);
  for (Subset s = 0; s < p.size(); ++s) {
    if (!contains(s, i)) out[s] = p[s | bit];
  }
  return out;
}

/// Coefficient reversal S -> [n] \ S.
template <class T>
BasicMultiAffinePoly<T> ma_flip(const BasicMultiAffinePoly<T>& q) {
  BasicMultiAffinePoly<T> out(q.n_vars());
  const Subset full = q.full_mask();
  for (Subset s = 0; s < q.size(); ++s) out[s] = q[full ^ s];
  return out;
}

template <class T>
BasicMultiAffinePoly<T> ma_hadamard(const BasicMultiAffinePoly<T>& p, const BasicMultiAffinePoly<T>& q) {
  p.check_same(q);
  BasicMultiAffinePoly<T> out(p.n_vars());
  for (Subset s = 0; s < p.size(); ++s) out[s] = p[s] * q[s];
  return out;
}

/// Elementary symmetric polynomial e_m(z_1, ..., z_n).
template <class T = double>
BasicMultiAffinePoly<T> elem_sym(std::size_t n, std::size_t m) {
  if (m > n) {
    throw std::invalid_argument("elementary symmetric degree " + std::to_string(m) + " exceeds " +
                                std::to_string(n) + " variables");
  }
  BasicMultiAffinePoly<T> out(n);
  for (Subset s = 0; s < out.size(); ++s) {
    if (static_cast<std::size_t>(subset_size(s)) == m) out[s] = T(1);
  }
  return out;
}

/// Product of polynomials in disjoint variable sets: p's variables come first.
template <class T>
BasicMultiAffinePoly<T> ma_tensor(const BasicMultiAffinePoly<T>& p, const BasicMultiAffinePoly<T>& q) {
  const std::size_t np = p.n_vars();
  BasicMultiAffinePoly<T> out(np + q.n_vars());
  for (Subset t = 0; t < q.size(); ++t) {
    if (is_zero(q[t])) continue;
    for (Subset s = 0; s < p.size(); ++s) out[s | (t << np)] = p[s] * q[t];
  }
  return out;
}

}  // namespace stablecalc
