#pragma once

#include <cmath>
#include <complex>

#include <gmpxx.h>

namespace stablecalc {

/// Exact coefficient type used by the rational mode.
using Rational = mpq_class;

/// Relative tolerance used at every strict-positivity check.
inline constexpr double kTolerance = 1e-9;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static bool is_zero(double v) { return v == 0.0; }
  static bool is_finite(double v) { return std::isfinite(v); }
  static double magnitude(double v) { return std::abs(v); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& v) { return v == std::complex<double>{}; }
  static bool is_finite(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
  static double magnitude(const std::complex<double>& v) { return std::abs(v); }
};

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static bool is_finite(const Rational&) { return true; }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
};

template <class T>
bool is_zero(const T& v) {
  return ScalarTraits<T>::is_zero(v);
}

template <class T>
double magnitude(const T& v) {
  return ScalarTraits<T>::magnitude(v);
}

}  // namespace stablecalc
