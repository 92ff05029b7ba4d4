#include "stablecalc/uni_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace stablecalc {

UniPoly::UniPoly(std::vector<double> ascending) : c_(std::move(ascending)) {
  for (double v : c_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite polynomial coefficient");
  }
  strip();
}

UniPoly UniPoly::constant(double c) { return UniPoly(std::vector<double>{c}); }

UniPoly UniPoly::monomial(int k, double c) {
  if (k < 0) throw std::invalid_argument("negative degree");
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(std::span<const double> roots, double lead) {
  std::vector<double> c{lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

void UniPoly::strip() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double UniPoly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::complex<double> UniPoly::eval(std::complex<double> x) const {
  std::complex<double> acc{};
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  std::vector<double> c = c_;
  for (int k = 0; k < order; ++k) {
    if (c.empty()) break;
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    c = std::move(d);
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::shifted(double s) const {
  // Horner in the polynomial ring: ((c_d)(x+s) + c_{d-1})(x+s) + ...
  UniPoly acc;
  const UniPoly lin(std::vector<double>{s, 1.0});
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + UniPoly::constant(c_[i]);
  return acc;
}

double UniPoly::l1_norm() const {
  double acc = 0.0;
  for (double v : c_) acc += std::abs(v);
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  strip();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  strip();
  return *this;
}

UniPoly& UniPoly::operator*=(double k) {
  for (double& v : c_) v *= k;
  strip();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

std::vector<std::complex<double>> uni_roots(const UniPoly& p) {
  const int d = p.degree();
  if (d <= 0) return {};
  const auto c = p.coeffs();
  const double lead = p.leading();
  // Rescale x = s*y so the monic coefficients are bounded by one.
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    const double a = std::abs(c[static_cast<std::size_t>(i)] / lead);
    if (a > 0.0) s = std::max(s, std::pow(a, 1.0 / (d - i)));
  }
  if (s == 0.0) return std::vector<std::complex<double>>(static_cast<std::size_t>(d));
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) {
    comp(i, d - 1) = -(c[static_cast<std::size_t>(i)] / lead) * std::pow(s, i - d);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue solver failed");
  std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = solver.eigenvalues()[i] * s;

  // The companion eigenvalues lose accuracy when root magnitudes differ by
  // orders of magnitude; Aberth-Ehrlich sweeps refine all roots jointly.
  const UniPoly dp = p.derivative();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool moved = false;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const std::complex<double> f = p.eval(z[k]);
      double mag = 0.0;
      for (int i = d; i >= 0; --i) mag = mag * std::abs(z[k]) + std::abs(c[static_cast<std::size_t>(i)]);
      // Residual at the rounding level: nothing left to refine.
      if (std::abs(f) <= 4.0 * std::numeric_limits<double>::epsilon() * mag) continue;
      const std::complex<double> w = f / dp.eval(z[k]);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      std::complex<double> repel = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k && z[j] != z[k]) repel += 1.0 / (z[k] - z[j]);
      }
      const std::complex<double> step = w / (1.0 - w * repel);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > 1e-14 * std::max(1.0, std::abs(z[k]))) moved = true;
    }
    if (!moved) break;
  }
  return z;
}

double max_imag_root_part(const UniPoly& p) {
  double m = 0.0;
  for (const auto& r : uni_roots(p)) m = std::max(m, std::abs(r.imag()));
  return m;
}

double cauchy_bound(const UniPoly& p) {
  if (p.degree() <= 0) return 0.0;
  double m = 0.0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p[static_cast<std::size_t>(i)] / p.leading()));
  return 1.0 + m;
}

namespace {

// True iff every derivative of the (positive-leading) polynomial is positive at x,
// i.e. x lies strictly above every real root. Near a multiple root the value
// drowns in rounding; a value within a few ulps of the Horner magnitude counts when
// the next derivative up was accepted.
bool all_derivatives_positive(const std::vector<UniPoly>& derivs, double x) {
  const double ax = std::abs(x);
  for (std::size_t k = derivs.size(); k-- > 0;) {
    const auto& d = derivs[k];
    const double v = d.eval(x);
    if (v > 0.0) continue;
    double mag = 0.0;
    for (std::size_t i = d.coeffs().size(); i-- > 0;) mag = mag * ax + std::abs(d.coeffs()[i]);
    const double noise = 2.0 * std::numeric_limits<double>::epsilon() * mag;
    if (std::abs(v) > noise) return false;
  }
  return true;
}

}  // namespace

double uni_max_root(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("maximum root of the zero polynomial");
  if (p.degree() == 0) return -std::numeric_limits<double>::infinity();
  const UniPoly q = p * (1.0 / p.leading());
  std::vector<UniPoly> derivs;
  for (int k = 0; k < q.degree(); ++k) derivs.push_back(q.derivative(k));

  double seed = -std::numeric_limits<double>::infinity();
  for (const auto& r : uni_roots(q)) seed = std::max(seed, r.real());
  const double bound = cauchy_bound(q);
  if (!std::isfinite(seed)) seed = bound;

  double hi = seed + 1e-6 * (1.0 + std::abs(seed));
  if (!all_derivatives_positive(derivs, hi)) hi = bound;
  double lo = seed - 1e-6 * (1.0 + std::abs(seed));
  for (double step = 1e-6 * (1.0 + std::abs(seed)); all_derivatives_positive(derivs, lo); step *= 2.0) {
    lo = seed - step;
    if (step > 4.0 * bound + 1.0) throw std::domain_error("failed to bracket the largest root");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (all_derivatives_positive(derivs, mid) ? hi : lo) = mid;
  }
  const double root = 0.5 * (lo + hi);

  double scale = 0.0;
  for (int i = 0; i <= q.degree(); ++i) scale += std::abs(q[static_cast<std::size_t>(i)]) * std::pow(std::abs(root), i);
  if (std::abs(q.eval(root)) > 1e-8 * std::max(1.0, scale)) {
    throw std::domain_error("largest-root residual check failed: polynomial is not real rooted");
  }
  return root;
}

double max_rel_diff(const UniPoly& a, const UniPoly& b) {
  const std::size_t n = static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1);
  double diff = 0.0;
  double ref = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    ref = std::max(ref, std::abs(b[i]));
  }
  return diff / ref;
}

}  // namespace stablecalc
