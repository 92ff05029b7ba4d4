#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace stablecalc {

/// Real univariate polynomial, coefficients ascending by degree.
///
/// Trailing zero coefficients are stripped on construction so that the stored
/// leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<double> ascending);

  static UniPoly constant(double c);
  static UniPoly monomial(int k, double c = 1.0);
  /// lead * prod (x - r).
  static UniPoly from_roots(std::span<const double> roots, double lead = 1.0);

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  /// Coefficient of x^i (zero beyond the degree).
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  std::span<const double> coeffs() const { return c_; }

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;

  UniPoly derivative(int order = 1) const;
  /// The polynomial x -> p(x + s).
  UniPoly shifted(double s) const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1.0; }
  double l1_norm() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(double k);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, double k) { return a *= k; }
  friend UniPoly operator*(double k, UniPoly a) { return a *= k; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

 private:
  void strip();
  std::vector<double> c_;
};

/// All complex roots: companion-matrix eigenvalues after rescaling, each
/// refined by a few Newton steps.
std::vector<std::complex<double>> uni_roots(const UniPoly& p);

/// max |Im r| over the roots of p; 0 for constants.
double max_imag_root_part(const UniPoly& p);

/// Cauchy bound: every root of p has modulus below the returned value.
double cauchy_bound(const UniPoly& p);

/// Largest real root of a real-rooted polynomial.
///
/// Seeds from the companion-matrix eigenvalues, brackets with the Cauchy bound
/// and refines by bisection on the "every derivative is positive" test, which
/// stays sharp at multiple roots. A nonzero constant returns -infinity. Throws
/// std::invalid_argument for the zero polynomial and std::domain_error when the
/// residual at the located point shows the input is not real rooted.
double uni_max_root(const UniPoly& p);

/// Largest |coefficient difference| divided by max(1, largest |coefficient| of b).
double max_rel_diff(const UniPoly& a, const UniPoly& b);

}  // namespace stablecalc
