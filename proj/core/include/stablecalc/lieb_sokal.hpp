#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/multiaffine.hpp"

namespace stablecalc {

/// A point c claimed to lie above the roots of q(d)p, with the data it came from.
///
/// c_i = a_i + b_i - 1/phi_i. A coordinate with phi_i <= tolerance is marked
/// unbounded and carries c_i = -infinity.
struct BoundCertificate {
  std::vector<double> c;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> phis;
  std::vector<bool> unbounded;
  /// q(d)p in the original variables.
  DensePoly target;
  bool verified = false;
};

/// Analytical Lieb-Sokal bound for multiaffine p, q.
///
/// Requires a above the roots of p and b above the roots of flip(q); throws
/// std::invalid_argument otherwise or when q(d)p vanishes identically. The
/// returned certificate has been checked against q(d)p.
BoundCertificate als_bound(const MultiAffinePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                           std::span<const double> b);

/// Polarized bound for p of degree at most k in each variable and multiaffine q.
///
/// Works on Pol(p) with the replicated point and on q~ = q(sum_j z_{1,j}, ...);
/// the potential of coordinate i is read at the first polarized copy i*k. The
/// target q(d)p is recovered as Sym(q~(d) Pol(p)).
BoundCertificate als_bound_polarized(const DensePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                                     std::span<const double> b, std::size_t k);

/// Bound for the convolution p*q: a + b - 1/(Phi_p(a) + Phi_q(b)) coordinatewise,
/// obtained from als_bound with the operator flip(q).
BoundCertificate convolution_bound(const MultiAffinePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                                   std::span<const double> b);

/// Re-runs the above-roots test of the certificate's point against its target.
/// Unbounded coordinates are replaced by 0 and must not occur in the target.
bool verify_certificate(const BoundCertificate& cert);

/// q~(z_{1,1}, ..., z_{n,k}) = q(sum_j z_{1,j}, ..., sum_j z_{n,j}) for multiaffine q.
MultiAffinePoly replicate_operator(const MultiAffinePoly& q, std::size_t k);

/// Shift budget p(a) / (d_i p(a) + d_j p(a)) for i != j; +infinity when the
/// denominator is below tolerance.
double shift_delta(const MultiAffinePoly& p, std::size_t i, std::size_t j, std::span<const double> a);

struct MinAResult {
  double a_star;
  double value;
};

/// Minimizer of a -> a - (eps/a + x)^{-1} over a > 0.
MinAResult min_a_closed_form(double eps, double x);

/// 4 eps^{1/4} + alpha.
double paving_simple_bound(double eps, double alpha);

/// Minimum over a > 0, b > 1 of a + b - 1/(eps/a + alpha/(b-1) + (1-alpha)/b),
/// or the trivial value 1 when sqrt(alpha) + sqrt(eps) > 1.
double paving_gamma(double eps, double alpha);

struct MixedCharBound {
  /// (1 + sqrt(2r) eps^{1/4})^2.
  double bound;
  /// Exact minimum of a + b - 1/(eps/a + (b-r+1)/(b(b-r))) over a > 0, b > r.
  double optimum;
  double a_star;
  double b_star;
  /// (1 + sqrt(r eps))^2.
  double mss_power;
  /// (1 + sqrt(eps))^2.
  double mss_single;
};

/// Mixed-discriminant root bound; requires r >= 1 and 0 < eps <= (1 - 1/sqrt(r))^2.
MixedCharBound mixed_char_bound(double eps, int r);

}  // namespace stablecalc
