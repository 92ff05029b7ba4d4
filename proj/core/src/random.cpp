#include "stablecalc/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>

#include "stablecalc/stable_calculus.hpp"

namespace stablecalc {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

cd complex_normal(Rng& rng) { return {rng.normal() * std::numbers::sqrt2 / 2.0, rng.normal() * std::numbers::sqrt2 / 2.0}; }

void make_top_positive(MultiAffinePoly& p) {
  const int d = p.degree();
  double top = 0.0;
  for (Subset s = 0; s < p.size(); ++s) {
    if (subset_size(s) == d) top += p[s];
  }
  if (top < 0.0) p *= -1.0;
}

MultiAffinePoly random_stable_rec(std::size_t n, Rng& rng, int depth) {
  const int kinds = (depth > 0 && n >= 1) ? 6 : 4;
  const int kind = rng.uniform_int(0, kinds - 1);
  MultiAffinePoly p;
  switch (kind) {
    case 0:
      p = char_multiaffine(random_hermitian(n, rng, rng.uniform() < 0.5));
      break;
    case 1:
      p = determinantal_measure(random_psd_contraction(n, 1.0, rng)).gen();
      break;
    case 2: {
      p = MultiAffinePoly::constant(0, 1.0);
      for (std::size_t i = 0; i < n; ++i) p = ma_tensor(p, MultiAffinePoly(1, {-rng.uniform(-2.0, 2.0), 1.0}));
      break;
    }
    case 3:
      p = elem_sym(n, static_cast<std::size_t>(rng.uniform_int(n == 0 ? 0 : 1, static_cast<int>(n))));
      break;
    case 4: {
      if (n < 2) return random_stable_rec(n, rng, depth - 1);
      const std::size_t left = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(n) - 1));
      p = ma_tensor(random_stable_rec(left, rng, depth - 1), random_stable_rec(n - left, rng, depth - 1));
      break;
    }
    default: {
      // d/dz_n of a polynomial in one more variable; the result ignores z_n.
      const MultiAffinePoly big = random_stable_rec(n + 1, rng, depth - 1);
      const MultiAffinePoly d = ma_partial(big, n);
      p = MultiAffinePoly(n);
      for (Subset s = 0; s < p.size(); ++s) p[s] = d[s];
      if (p.is_zero()) return random_stable_rec(n, rng, depth - 1);
      break;
    }
  }
  make_top_positive(p);
  return p * rng.uniform(0.5, 2.0);
}

template <class Poly>
std::vector<double> point_above(const Poly& p, Rng& rng, double lo, double hi) {
  double s = diag_threshold(p);
  if (!std::isfinite(s)) s = 0.0;
  std::vector<double> a(p.n_vars());
  for (double& v : a) v = s + rng.uniform(lo, hi);
  return a;
}

}  // namespace

Rng Rng::for_instance(std::uint64_t seed, std::uint64_t id) {
  return Rng(splitmix64(seed ^ splitmix64(id + 0x632BE59BD9B4E019ULL)));
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return lo + static_cast<int>(eng_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(th);
  have_spare_ = true;
  return rad * std::cos(th);
}

Eigen::MatrixXcd haar_unitary(std::size_t n, Rng& rng) {
  const Eigen::Index k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) g(i, j) = complex_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_hermitian(std::size_t n, Rng& rng, bool real) {
  const Eigen::Index k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) g(i, j) = real ? cd(rng.normal(), 0.0) : complex_normal(rng);
  }
  return HermitianMatrix(Eigen::MatrixXcd((g + g.adjoint()) * 0.5));
}

HermitianMatrix random_psd_contraction(std::size_t n, double alpha, Rng& rng) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const Eigen::MatrixXcd v = haar_unitary(n, rng);
  Eigen::VectorXd u(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.uniform();
  Eigen::MatrixXcd a = v * u.cast<cd>().asDiagonal() * v.adjoint();
  const double top = n == 0 ? 0.0 : a.diagonal().real().maxCoeff();
  if (top > alpha) a *= alpha / top;
  return HermitianMatrix(std::move(a));
}

Rank1Resolution random_rank1_resolution(std::size_t n, std::size_t m, Rng& rng) {
  if (m < n) throw std::invalid_argument("a rank-one resolution needs at least n terms");
  const Eigen::MatrixXcd u = haar_unitary(m, rng);
  Rank1Resolution out;
  out.dec.resolution = true;
  out.eps = 0.0;
  const Eigen::Index k = static_cast<Eigen::Index>(n);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
    const Eigen::VectorXcd v = u.col(j).head(k);
    out.eps = std::max(out.eps, v.squaredNorm());
    out.dec.matrices.emplace_back(Eigen::MatrixXcd(v * v.adjoint()));
  }
  return out;
}

UniPoly random_real_rooted(int degree, Rng& rng, double lo, double hi, double lead) {
  std::vector<double> roots(static_cast<std::size_t>(degree));
  for (double& r : roots) r = rng.uniform(lo, hi);
  return UniPoly::from_roots(roots, lead);
}

MultiAffinePoly random_integer_multiaffine(std::size_t n, Rng& rng, int range) {
  MultiAffinePoly p(n);
  for (Subset s = 0; s < p.size(); ++s) p[s] = rng.uniform_int(-range, range);
  return p;
}

ExactMultiAffinePoly to_exact(const MultiAffinePoly& p) {
  ExactMultiAffinePoly out(p.n_vars());
  for (Subset s = 0; s < p.size(); ++s) out[s] = Rational(p[s]);
  return out;
}

MultiAffinePoly random_stable_multiaffine(std::size_t n, Rng& rng) { return random_stable_rec(n, rng, 2); }

DensePoly random_stable_dense(std::size_t n, std::size_t k, Rng& rng) {
  DensePoly p = DensePoly::constant(n, 1.0);
  for (std::size_t j = 0; j < k; ++j) p = dense_mul(p, to_dense(random_stable_multiaffine(n, rng)));
  return p;
}

SRMeasure random_measure(std::size_t n, Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      std::vector<double> p(n);
      for (double& v : p) v = rng.uniform();
      return product_measure(p);
    }
    case 1:
      return determinantal_measure(random_psd_contraction(n, 1.0, rng));
    default: {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n)));
      MultiAffinePoly e = elem_sym(n, k);
      double count = 0.0;
      for (double c : e.coeffs()) count += c;
      return SRMeasure(e * (1.0 / count), "elementary");
    }
  }
}

SRMeasure random_homogeneous_measure(std::size_t n, Rng& rng) {
  const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n)));
  if (rng.uniform() < 0.5) {
    MultiAffinePoly e = elem_sym(n, k);
    double count = 0.0;
    for (double c : e.coeffs()) count += c;
    return SRMeasure(e * (1.0 / count), "elementary");
  }
  const Eigen::MatrixXcd v = haar_unitary(n, rng).leftCols(static_cast<Eigen::Index>(k));
  return determinantal_measure(HermitianMatrix(v * v.adjoint()));
}

std::vector<double> random_point_above(const MultiAffinePoly& p, Rng& rng, double lo, double hi) {
  return point_above(p, rng, lo, hi);
}

std::vector<double> random_point_above(const DensePoly& p, Rng& rng, double lo, double hi) {
  return point_above(p, rng, lo, hi);
}

}  // namespace stablecalc
