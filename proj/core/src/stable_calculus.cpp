#include "stablecalc/stable_calculus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stablecalc {

namespace {

void check_point(std::size_t n, std::span<const double> a) {
  if (a.size() != n) {
    throw std::invalid_argument("point has " + std::to_string(a.size()) + " coordinates, polynomial has " +
                                std::to_string(n) + " variables");
  }
}

// +1 or -1 so that sign * (sum of top-degree coefficients) is positive.
double top_sign(const MultiAffinePoly& p) {
  const int d = p.degree();
  double top = 0.0;
  double first = 0.0;
  for (Subset s = 0; s < p.size(); ++s) {
    if (subset_size(s) == d && p[s] != 0.0) {
      top += p[s];
      if (first == 0.0) first = p[s];
    }
  }
  if (top == 0.0) top = first;
  return top < 0.0 ? -1.0 : 1.0;
}

double top_sign(const DensePoly& p) {
  const int d = p.total_degree();
  double top = 0.0;
  double first = 0.0;
  for (const auto& [e, c] : p.terms()) {
    int s = 0;
    for (int k : e) s += k;
    if (s == d) {
      top += c;
      if (first == 0.0) first = c;
    }
  }
  if (top == 0.0) top = first;
  return top < 0.0 ? -1.0 : 1.0;
}

// g[S] = (d^S p)(a) for every S, via one superset pass per variable.
std::vector<double> all_partials_at(std::span<const double> coeffs, std::span<const double> a) {
  std::vector<double> g(coeffs.begin(), coeffs.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Subset bit = singleton(i);
    for (Subset t = 0; t < g.size(); ++t) {
      if (t & bit) g[t ^ bit] += a[i] * g[t];
    }
  }
  return g;
}

// Every exponent vector in the box prod [0, deg_i].
template <class F>
void for_each_in_box(const std::vector<int>& deg, F&& f) {
  std::vector<int> e(deg.size(), 0);
  while (true) {
    f(e);
    std::size_t i = 0;
    for (; i < deg.size(); ++i) {
      if (++e[i] <= deg[i]) break;
      e[i] = 0;
    }
    if (i == deg.size()) return;
  }
}

std::vector<int> actual_degrees(const DensePoly& p) {
  std::vector<int> deg(p.n_vars());
  for (std::size_t i = 0; i < p.n_vars(); ++i) deg[i] = std::max(0, p.degree(i));
  return deg;
}

double checked_value(double value, double norm) {
  if (!(value > kTolerance * norm)) {
    throw std::domain_error("point is not above the roots: polynomial value " + std::to_string(value) +
                            " is not positive");
  }
  return value;
}

template <class Poly, class Above>
double threshold_search(const Poly& p, Above above) {
  std::vector<double> pt(p.n_vars());
  auto test = [&](double s) {
    std::fill(pt.begin(), pt.end(), s);
    return above(p, std::span<const double>(pt));
  };
  double hi = 1.0;
  int doublings = 0;
  while (!test(hi)) {
    hi *= 2.0;
    if (++doublings > 60) throw std::runtime_error("diag_threshold: no upper bracket within 60 doublings");
  }
  double step = 1.0;
  double lo = hi - step;
  doublings = 0;
  while (test(lo)) {
    step *= 2.0;
    lo = hi - step;
    if (++doublings > 60) throw std::runtime_error("diag_threshold: no lower bracket within 60 doublings");
  }
  while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (test(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool above_roots(const MultiAffinePoly& p, std::span<const double> a, double tol) {
  check_point(p.n_vars(), a);
  if (p.is_zero()) throw std::invalid_argument("above_roots of the zero polynomial");
  const double sign = top_sign(p);
  const auto vals = all_partials_at(p.coeffs(), a);
  std::vector<double> abs_coeffs(p.size());
  for (Subset s = 0; s < p.size(); ++s) abs_coeffs[s] = std::abs(p[s]);
  const std::vector<double> ones(p.n_vars(), 1.0);
  const auto norms = all_partials_at(abs_coeffs, ones);
  for (Subset s = 0; s < p.size(); ++s) {
    if (norms[s] == 0.0) continue;
    if (!(sign * vals[s] > tol * norms[s])) return false;
  }
  return true;
}

bool above_roots(const DensePoly& p, std::span<const double> a, double tol) {
  check_point(p.n_vars(), a);
  if (p.is_zero()) throw std::invalid_argument("above_roots of the zero polynomial");
  const double sign = top_sign(p);
  bool ok = true;
  for_each_in_box(actual_degrees(p), [&](const std::vector<int>& e) {
    if (!ok) return;
    const auto d = dense_diffop<double>(e, p);
    if (d.is_zero()) return;
    if (!(sign * dense_eval(d, a) > tol * d.l1_norm())) ok = false;
  });
  return ok;
}

double potential(const MultiAffinePoly& p, std::span<const double> a, std::size_t k) {
  check_point(p.n_vars(), a);
  if (k >= p.n_vars()) throw std::out_of_range("potential direction out of range");
  const double sign = top_sign(p);
  const double value = checked_value(sign * ma_eval(p, a), p.l1_norm());
  return sign * ma_eval(ma_partial(p, k), a) / value;
}

double potential(const DensePoly& p, std::span<const double> a, std::size_t k) {
  check_point(p.n_vars(), a);
  if (k >= p.n_vars()) throw std::out_of_range("potential direction out of range");
  const double sign = top_sign(p);
  const double value = checked_value(sign * dense_eval(p, a), p.l1_norm());
  return sign * dense_eval(dense_partial(p, k), a) / value;
}

double potential(const MultiAffinePoly& p, std::span<const double> a, std::span<const double> v) {
  check_point(p.n_vars(), a);
  check_point(p.n_vars(), v);
  const double sign = top_sign(p);
  const double value = checked_value(sign * ma_eval(p, a), p.l1_norm());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) d += v[i] * ma_eval(ma_partial(p, i), a);
  }
  return sign * d / value;
}

double potential(const DensePoly& p, std::span<const double> a, std::span<const double> v) {
  check_point(p.n_vars(), a);
  check_point(p.n_vars(), v);
  const double sign = top_sign(p);
  const double value = checked_value(sign * dense_eval(p, a), p.l1_norm());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) d += v[i] * dense_eval(dense_partial(p, i), a);
  }
  return sign * d / value;
}

double diag_threshold(const MultiAffinePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("diag_threshold of the zero polynomial");
  if (p.degree() == 0) return -std::numeric_limits<double>::infinity();
  return threshold_search(p, [](const MultiAffinePoly& q, std::span<const double> x) {
    return above_roots(q, x, 0.0);
  });
}

double diag_threshold(const DensePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("diag_threshold of the zero polynomial");
  if (p.total_degree() == 0) return -std::numeric_limits<double>::infinity();
  return threshold_search(p, [](const DensePoly& q, std::span<const double> x) { return above_roots(q, x, 0.0); });
}

double uni_smax(const UniPoly& p, double phi) {
  if (!(phi > 0.0) || !std::isfinite(phi)) throw std::invalid_argument("smax requires a positive finite phi");
  return uni_max_root(p.derivative() - phi * p);
}

UniPoly free_additive_convolution(const UniPoly& p, const UniPoly& q, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  if (p.degree() != d || q.degree() != d) {
    throw std::invalid_argument("free convolution needs two polynomials of degree " + std::to_string(d));
  }
  if (!p.is_monic() || !q.is_monic()) throw std::invalid_argument("free convolution needs monic polynomials");
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  auto at = [&](double y) {
    UniPoly acc;
    for (int k = 0; k <= d; ++k) acc += p.derivative(k) * q.derivative(d - k).eval(y);
    return acc * (1.0 / fact);
  };
  UniPoly r = at(0.0);
  if (max_rel_diff(at(1.0), r.shifted(1.0)) > 1e-8) {
    throw std::runtime_error("free additive convolution is not consistent in the shift variable");
  }
  return r;
}

}  // namespace stablecalc
