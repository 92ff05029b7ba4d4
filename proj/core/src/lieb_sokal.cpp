#include "stablecalc/lieb_sokal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stablecalc/polarization.hpp"
#include "stablecalc/stable_calculus.hpp"

namespace stablecalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_len(std::span<const double> v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string(name) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                                std::to_string(n));
  }
}

void fill_point(BoundCertificate& cert, std::span<const double> a, std::span<const double> b) {
  cert.a.assign(a.begin(), a.end());
  cert.b.assign(b.begin(), b.end());
  const std::size_t n = a.size();
  cert.c.assign(n, 0.0);
  cert.unbounded.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.phis[i] <= kTolerance) {
      cert.unbounded[i] = true;
      cert.c[i] = -kInf;
    } else {
      cert.c[i] = a[i] + b[i] - 1.0 / cert.phis[i];
    }
  }
}

std::vector<double> replicate(std::span<const double> v, std::size_t k) {
  std::vector<double> out;
  out.reserve(v.size() * k);
  for (double x : v) out.insert(out.end(), k, x);
  return out;
}

}  // namespace

BoundCertificate als_bound(const MultiAffinePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                           std::span<const double> b) {
  p.check_same(q);
  const std::size_t n = p.n_vars();
  check_len(a, n, "a");
  check_len(b, n, "b");
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("als_bound needs nonzero p and q");
  const MultiAffinePoly qf = ma_flip(q);
  if (!above_roots(p, a)) throw std::invalid_argument("a is not above the roots of p");
  if (!above_roots(qf, b)) throw std::invalid_argument("b is not above the roots of the flip of q");
  const MultiAffinePoly target = apply_diffop(q, p);
  if (target.is_zero()) throw std::invalid_argument("q(d)p vanishes identically");

  BoundCertificate cert;
  cert.phis.resize(n);
  for (std::size_t i = 0; i < n; ++i) cert.phis[i] = potential(p, a, i) + potential(qf, b, i);
  fill_point(cert, a, b);
  cert.target = to_dense(target);
  cert.verified = verify_certificate(cert);
  return cert;
}

MultiAffinePoly replicate_operator(const MultiAffinePoly& q, std::size_t k) {
  if (k == 0) throw std::invalid_argument("replication factor must be positive");
  const std::size_t n = q.n_vars();
  MultiAffinePoly out(n * k);
  for (Subset t = 0; t < q.size(); ++t) {
    if (q[t] == 0.0) continue;
    const auto idx = subset_indices(t);
    std::vector<std::size_t> pick(idx.size(), 0);
    while (true) {
      Subset s = 0;
      for (std::size_t m = 0; m < idx.size(); ++m) s |= singleton(idx[m] * k + pick[m]);
      out[s] += q[t];
      std::size_t m = 0;
      for (; m < idx.size(); ++m) {
        if (++pick[m] < k) break;
        pick[m] = 0;
      }
      if (m == idx.size()) break;
    }
  }
  return out;
}

BoundCertificate als_bound_polarized(const DensePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                                     std::span<const double> b, std::size_t k) {
  const std::size_t n = p.n_vars();
  if (q.n_vars() != n) throw std::invalid_argument("p and q have different numbers of variables");
  check_len(a, n, "a");
  check_len(b, n, "b");
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("als_bound_polarized needs nonzero p and q");
  const MultiAffinePoly pol = polarize(p, k);
  const MultiAffinePoly qt = replicate_operator(q, k);
  const MultiAffinePoly qtf = ma_flip(qt);
  const auto abar = replicate(a, k);
  const auto bbar = replicate(b, k);
  if (!above_roots(pol, abar)) throw std::invalid_argument("replicated a is not above the roots of Pol(p)");
  if (!above_roots(qtf, bbar)) throw std::invalid_argument("replicated b is not above the roots of the flipped q~");
  DensePoly target = symmetrize(apply_diffop(qt, pol), k);
  if (target.is_zero()) throw std::invalid_argument("q(d)p vanishes identically");

  BoundCertificate cert;
  cert.phis.resize(n);
  for (std::size_t i = 0; i < n; ++i) cert.phis[i] = potential(pol, abar, i * k) + potential(qtf, bbar, i * k);
  fill_point(cert, a, b);
  cert.target = std::move(target);
  cert.verified = verify_certificate(cert);
  return cert;
}

BoundCertificate convolution_bound(const MultiAffinePoly& p, const MultiAffinePoly& q, std::span<const double> a,
                                   std::span<const double> b) {
  return als_bound(p, ma_flip(q), a, b);
}

bool verify_certificate(const BoundCertificate& cert) {
  const std::size_t n = cert.c.size();
  if (cert.target.n_vars() != n || cert.target.is_zero()) return false;
  std::vector<double> point(cert.c);
  bool multiaffine = true;
  for (std::size_t i = 0; i < n; ++i) {
    const int deg = cert.target.degree(i);
    if (cert.unbounded[i]) {
      if (deg > 0) return false;
      point[i] = 0.0;
    }
    if (deg > 1) multiaffine = false;
  }
  if (multiaffine) return above_roots(to_multiaffine(cert.target), point);
  return above_roots(cert.target, point);
}

double shift_delta(const MultiAffinePoly& p, std::size_t i, std::size_t j, std::span<const double> a) {
  if (i == j) throw std::invalid_argument("shift_delta needs two distinct coordinates");
  if (i >= p.n_vars() || j >= p.n_vars()) throw std::out_of_range("shift coordinate out of range");
  if (!above_roots(p, a)) throw std::invalid_argument("a is not above the roots of p");
  // Potentials carry the sign normalization, so work with their sum.
  const double denom = potential(p, a, i) + potential(p, a, j);
  if (denom <= kTolerance) return kInf;
  return 1.0 / denom;
}

MinAResult min_a_closed_form(double eps, double x) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("x must be positive");
  const double s = std::sqrt(eps);
  return {(s - eps) / x, -(1.0 - s) * (1.0 - s) / x};
}

double paving_simple_bound(double eps, double alpha) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  return 4.0 * std::pow(eps, 0.25) + alpha;
}

double paving_gamma(double eps, double alpha) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  const double s = std::sqrt(eps);
  if (std::sqrt(alpha) + s > 1.0) return 1.0;
  const double t = 2.0 * s - eps;
  return 2.0 * std::sqrt(t) * (1.0 - s) * std::sqrt(alpha * (1.0 - alpha)) + alpha + (1.0 - 2.0 * alpha) * t;
}

MixedCharBound mixed_char_bound(double eps, int r) {
  if (r < 1) throw std::invalid_argument("r must be a positive integer");
  const double limit = (1.0 - 1.0 / std::sqrt(static_cast<double>(r))) * (1.0 - 1.0 / std::sqrt(static_cast<double>(r)));
  if (!(eps > 0.0) || eps > limit) {
    throw std::invalid_argument("eps = " + std::to_string(eps) + " outside the validity range (0, " +
                                std::to_string(limit) + "] for r = " + std::to_string(r));
  }
  const double rd = r;
  const double s = 1.0 - std::sqrt(eps);
  const double t = 1.0 - s * s;
  MixedCharBound out{};
  const double root = 1.0 + std::sqrt(2.0 * rd) * std::pow(eps, 0.25);
  out.bound = root * root;
  // With u = b - r + 1 the reduced objective is t*u + s^2 (r-1)/u + const.
  const double u = s * std::sqrt((rd - 1.0) / t);
  out.optimum = 1.0 + 2.0 * s * std::sqrt((rd - 1.0) * t) + (rd - 2.0) * t;
  out.b_star = u + rd - 1.0;
  // At the edge of the validity range b_star reaches r and the optimal a is 0.
  out.a_star = u > 1.0 ? min_a_closed_form(eps, u / (out.b_star * (u - 1.0))).a_star : 0.0;
  out.mss_power = (1.0 + std::sqrt(rd * eps)) * (1.0 + std::sqrt(rd * eps));
  out.mss_single = (1.0 + std::sqrt(eps)) * (1.0 + std::sqrt(eps));
  return out;
}

}  // namespace stablecalc
