#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stablecalc/multiaffine.hpp"
#include "stablecalc/scalar.hpp"

namespace stablecalc {

/// Multivariate polynomial with a per-variable degree cap and a sparse term table.
///
/// Terms are keyed by exponent vectors in lexicographic order. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
template <class T>
class BasicDensePoly {
 public:
  using value_type = T;
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, T>;

  explicit BasicDensePoly(std::size_t n_vars = 0) : n_vars_(n_vars), max_deg_(n_vars, 0) {}

  /// Builds from a term table. When max_deg is empty the cap is the actual degree.
  BasicDensePoly(std::size_t n_vars, const TermMap& terms, std::vector<int> max_deg = {})
      : n_vars_(n_vars), max_deg_(std::move(max_deg)) {
    const bool tight = max_deg_.empty();
    if (tight) max_deg_.assign(n_vars_, 0);
    if (max_deg_.size() != n_vars_) throw std::invalid_argument("degree cap has wrong length");
    for (const auto& [e, c] : terms) {
      check_exponents(e, !tight);
      if (tight) {
        for (std::size_t i = 0; i < n_vars_; ++i) max_deg_[i] = std::max(max_deg_[i], e[i]);
      }
      add_term(e, c);
    }
  }

  static BasicDensePoly constant(std::size_t n_vars, const T& c) {
    BasicDensePoly p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
  }

  static BasicDensePoly variable(std::size_t n_vars, std::size_t i) {
    if (i >= n_vars) throw std::out_of_range("variable index out of range");
    Exponents e(n_vars, 0);
    e[i] = 1;
    BasicDensePoly p(n_vars);
    p.max_deg_[i] = 1;
    p.add_term(e, T(1));
    return p;
  }

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  const std::vector<int>& max_deg() const { return max_deg_; }
  bool is_zero() const { return terms_.empty(); }

  /// Actual degree in variable i (-1 for the zero polynomial).
  int degree(std::size_t i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  T coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  /// Adds c * z^e, merging with an existing term. The exponent must respect the cap.
  void add_term(const Exponents& e, const T& c) {
    check_exponents(e, true);
    if (!ScalarTraits<T>::is_finite(c)) throw std::invalid_argument("non-finite coefficient");
    if (stablecalc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (stablecalc::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Raises the degree cap; caps never shrink below stored terms.
  void raise_cap(const std::vector<int>& cap) {
    if (cap.size() != n_vars_) throw std::invalid_argument("degree cap has wrong length");
    for (std::size_t i = 0; i < n_vars_; ++i) max_deg_[i] = std::max(max_deg_[i], cap[i]);
  }

  double l1_norm() const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) acc += magnitude(c);
    return acc;
  }

  BasicDensePoly& operator+=(const BasicDensePoly& o) {
    check_same(o);
    raise_cap(o.max_deg_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicDensePoly& operator-=(const BasicDensePoly& o) {
    check_same(o);
    raise_cap(o.max_deg_);
    for (const auto& [e, c] : o.terms_) add_term(e, T(-c));
    return *this;
  }
  BasicDensePoly& operator*=(const T& k) {
    if (stablecalc::is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend BasicDensePoly operator+(BasicDensePoly a, const BasicDensePoly& b) { return a += b; }
  friend BasicDensePoly operator-(BasicDensePoly a, const BasicDensePoly& b) { return a -= b; }
  friend BasicDensePoly operator*(BasicDensePoly a, const T& k) { return a *= k; }

  /// Equality of the polynomials; the degree caps are not compared.
  friend bool operator==(const BasicDensePoly& a, const BasicDensePoly& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

  void check_same(const BasicDensePoly& o) const {
    if (o.n_vars_ != n_vars_) {
      throw std::invalid_argument("dimension mismatch: " + std::to_string(n_vars_) + " vs " +
                                  std::to_string(o.n_vars_) + " variables");
    }
  }

 private:
  void check_exponents(const Exponents& e, bool against_cap) const {
    if (e.size() != n_vars_) throw std::invalid_argument("exponent vector has wrong length");
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (e[i] < 0) throw std::invalid_argument("negative exponent");
      if (against_cap && e[i] > max_deg_[i]) {
        throw std::invalid_argument("exponent " + std::to_string(e[i]) + " of variable " + std::to_string(i) +
                                    " exceeds degree cap " + std::to_string(max_deg_[i]));
      }
    }
  }

  std::size_t n_vars_;
  std::vector<int> max_deg_;
  TermMap terms_;
};

using DensePoly = BasicDensePoly<double>;
using ExactDensePoly = BasicDensePoly<Rational>;
using ComplexDensePoly = BasicDensePoly<std::complex<double>>;

template <class T>
BasicDensePoly<T> dense_mul(const BasicDensePoly<T>& p, const BasicDensePoly<T>& q) {
  p.check_same(q);
  const std::size_t n = p.n_vars();
  std::vector<int> cap(n);
  for (std::size_t i = 0; i < n; ++i) cap[i] = p.max_deg()[i] + q.max_deg()[i];
  BasicDensePoly<T> out(n, {}, cap);
  typename BasicDensePoly<T>::Exponents e(n);
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ep[i] + eq[i];
      out.add_term(e, T(cp * cq));
    }
  }
  return out;
}

/// Applies prod_i d^{orders_i}/dz_i^{orders_i}.
template <class T>
BasicDensePoly<T> dense_diffop(std::span<const int> orders, const BasicDensePoly<T>& p) {
  const std::size_t n = p.n_vars();
  if (orders.size() != n) throw std::invalid_argument("derivative order vector has wrong length");
  std::vector<int> cap(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] < 0) throw std::invalid_argument("negative derivative order");
    cap[i] = std::max(0, p.max_deg()[i] - orders[i]);
  }
  BasicDensePoly<T> out(n, {}, cap);
  typename BasicDensePoly<T>::Exponents e(n);
  for (const auto& [ep, c] : p.terms()) {
    T factor(1);
    bool vanishes = false;
    for (std::size_t i = 0; i < n && !vanishes; ++i) {
      if (ep[i] < orders[i]) {
        vanishes = true;
        break;
      }
      for (int k = 0; k < orders[i]; ++k) factor *= T(ep[i] - k);
      e[i] = ep[i] - orders[i];
    }
    if (!vanishes) out.add_term(e, T(c * factor));
  }
  return out;
}

template <class T>
BasicDensePoly<T> dense_partial(const BasicDensePoly<T>& p, std::size_t i) {
  if (i >= p.n_vars()) throw std::out_of_range("partial derivative index out of range");
  std::vector<int> orders(p.n_vars(), 0);
  orders[i] = 1;
  return dense_diffop<T>(orders, p);
}

template <class T>
T dense_eval(const BasicDensePoly<T>& p, std::span<const std::type_identity_t<T>> x) {
  if (x.size() != p.n_vars()) throw std::invalid_argument("point dimension mismatch");
  T acc(0);
  for (const auto& [e, c] : p.terms()) {
    T term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    }
    acc += term;
  }
  return acc;
}

/// Substitutes z_i <- scale * z_i for every variable.
template <class T>
BasicDensePoly<T> dense_scale_vars(const BasicDensePoly<T>& p, const T& scale) {
  BasicDensePoly<T> out(p.n_vars(), {}, p.max_deg());
  for (const auto& [e, c] : p.terms()) {
    T f = c;
    for (int k : e) {
      for (int j = 0; j < k; ++j) f *= scale;
    }
    out.add_term(e, f);
  }
  return out;
}

template <class T>
BasicDensePoly<T> to_dense(const BasicMultiAffinePoly<T>& p) {
  const std::size_t n = p.n_vars();
  BasicDensePoly<T> out(n, {}, std::vector<int>(n, 1));
  typename BasicDensePoly<T>::Exponents e(n);
  for (Subset s = 0; s < p.size(); ++s) {
    if (is_zero(p[s])) continue;
    for (std::size_t i = 0; i < n; ++i) e[i] = contains(s, i) ? 1 : 0;
    out.add_term(e, p[s]);
  }
  return out;
}

/// Reads a polynomial back as multiaffine; throws if some exponent exceeds one.
template <class T>
BasicMultiAffinePoly<T> to_multiaffine(const BasicDensePoly<T>& p) {
  BasicMultiAffinePoly<T> out(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    Subset s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 1) throw std::invalid_argument("polynomial is not multiaffine in variable " + std::to_string(i));
      if (e[i] == 1) s |= singleton(i);
    }
    out[s] += c;
  }
  return out;
}

/// Determinant of a square matrix with polynomial entries by row-wise Laplace
/// expansion, memoized over the set of columns still available.
template <class T>
BasicDensePoly<T> dense_det(const std::vector<std::vector<BasicDensePoly<T>>>& m, std::size_t n_vars) {
  const std::size_t n = m.size();
  if (n > 16) throw std::length_error("symbolic determinant limited to 16 rows");
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  }
  // minor[cols] = det of rows (n - |cols|).. n-1 restricted to cols.
  std::vector<BasicDensePoly<T>> minor(std::size_t{1} << n, BasicDensePoly<T>(n_vars));
  minor[0] = BasicDensePoly<T>::constant(n_vars, T(1));
  for (Subset cols = 1; cols < (Subset{1} << n); ++cols) {
    const std::size_t row = n - static_cast<std::size_t>(subset_size(cols));
    BasicDensePoly<T> acc(n_vars);
    int sign = 1;
    for (std::size_t c : subset_indices(cols)) {
      const auto& entry = m[row][c];
      const auto& rest = minor[cols ^ singleton(c)];
      if (!entry.is_zero() && !rest.is_zero()) {
        auto term = dense_mul(entry, rest);
        if (sign < 0) term *= T(-1);
        acc += term;
      }
      sign = -sign;
    }
    minor[cols] = std::move(acc);
  }
  return minor[full_set(n)];
}

}  // namespace stablecalc
