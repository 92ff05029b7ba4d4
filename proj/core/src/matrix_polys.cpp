#include "stablecalc/matrix_polys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "stablecalc/stable_calculus.hpp"

namespace stablecalc {

namespace {

using Index = Eigen::Index;
using cd = std::complex<double>;

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& idx) {
  const Index k = static_cast<Index>(idx.size());
  Eigen::MatrixXcd out(k, k);
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) out(r, c) = m(static_cast<Index>(idx[r]), static_cast<Index>(idx[c]));
  }
  return out;
}

double real_part_checked(cd v, double scale, const char* what) {
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw std::runtime_error(std::string(what) + " has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

// Principal-minor table of a single component: entry at local S is
// (-1)^{c-|S|} det(A restricted to the complement of S).
std::vector<double> component_table(const Eigen::MatrixXcd& a) {
  const std::size_t c = static_cast<std::size_t>(a.rows());
  const Subset full = full_set(c);
  const double base = std::max(1.0, a.norm());
  std::vector<double> t(std::size_t{1} << c);
  for (Subset s = 0; s <= full; ++s) {
    const Subset comp = full ^ s;
    const int k = subset_size(comp);
    double det = 1.0;
    if (k > 0) {
      const cd d = submatrix(a, subset_indices(comp)).partialPivLu().determinant();
      det = real_part_checked(d, std::pow(base, k), "principal minor");
    }
    t[s] = (k % 2 == 0) ? det : -det;
  }
  return t;
}

std::vector<std::vector<std::size_t>> components(const Eigen::MatrixXcd& a) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(static_cast<Index>(i), static_cast<Index>(j)) != cd{}) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

void check_decomposition_size(const PSDDecomposition& dec) {
  const std::size_t m = dec.matrices.size();
  const std::size_t n = m == 0 ? 0 : dec.matrices.front().n();
  if (m > 8 || n > 8) {
    throw std::length_error("mixed characteristic polynomial limited to 8 matrices of size at most 8");
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  for (Index i = 0; i < m.size(); ++i) {
    const cd v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite matrix entry");
  }
  const double tol = 1e-12 * std::max(1.0, max_abs(m));
  const Eigen::MatrixXcd adj = m.adjoint();
  if (m.size() > 0 && (m - adj).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
  m_ = (m + adj) * 0.5;
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& m) {
  return HermitianMatrix(Eigen::MatrixXcd(m.cast<cd>()));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  const Index k = static_cast<Index>(n);
  return HermitianMatrix(Eigen::MatrixXcd::Zero(k, k));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  const Index k = static_cast<Index>(n);
  return HermitianMatrix(Eigen::MatrixXcd::Identity(k, k));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  const Index k = static_cast<Index>(d.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
  for (Index i = 0; i < k; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return HermitianMatrix(std::move(m));
}

bool HermitianMatrix::is_real() const { return m_.size() == 0 || m_.imag().cwiseAbs().maxCoeff() == 0.0; }

void validate_decomposition(const PSDDecomposition& dec) {
  if (dec.matrices.empty()) throw std::invalid_argument("decomposition has no matrices");
  const std::size_t n = dec.matrices.front().n();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < dec.matrices.size(); ++i) {
    const auto& a = dec.matrices[i];
    if (a.n() != n) throw std::invalid_argument("decomposition matrices have different sizes");
    if (!is_psd(a)) throw std::invalid_argument("matrix " + std::to_string(i) + " is not positive semidefinite");
    sum += a.mat();
  }
  if (dec.resolution) {
    sum -= Eigen::MatrixXcd::Identity(static_cast<Index>(n), static_cast<Index>(n));
    if (sum.size() > 0 && sum.operatorNorm() > 1e-9) {
      throw std::invalid_argument("matrices do not sum to the identity");
    }
  }
}

std::vector<double> eigenvalues(const HermitianMatrix& a) {
  if (a.n() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double lambda_max(const HermitianMatrix& a) {
  if (a.n() == 0) throw std::invalid_argument("largest eigenvalue of an empty matrix");
  return eigenvalues(a).back();
}

double max_diagonal(const HermitianMatrix& a) {
  if (a.n() == 0) throw std::invalid_argument("diagonal of an empty matrix");
  return a.mat().diagonal().real().maxCoeff();
}

bool is_psd(const HermitianMatrix& a, double tol) {
  if (a.n() == 0) return true;
  return eigenvalues(a).front() >= -tol;
}

UniPoly charpoly(const HermitianMatrix& a) {
  const auto ev = eigenvalues(a);
  return UniPoly::from_roots(ev);
}

HermitianMatrix principal_submatrix(const HermitianMatrix& a, Subset s) {
  if (s > full_set(a.n())) throw std::out_of_range("subset outside the matrix index range");
  return HermitianMatrix(submatrix(a.mat(), subset_indices(s)));
}

HermitianMatrix block_diag(const HermitianMatrix& a, std::size_t r) {
  if (r == 0) throw std::invalid_argument("block_diag needs at least one copy");
  const Index n = static_cast<Index>(a.n());
  const Index big = n * static_cast<Index>(r);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(big, big);
  for (Index k = 0; k < static_cast<Index>(r); ++k) m.block(k * n, k * n, n, n) = a.mat();
  return HermitianMatrix(std::move(m));
}

MultiAffinePoly char_multiaffine(const HermitianMatrix& a) {
  const std::size_t n = a.n();
  MultiAffinePoly out(n);  // enforces the variable guard
  std::vector<double> acc(std::size_t{1} << n, 0.0);
  acc[0] = 1.0;
  Subset done = 0;
  for (const auto& comp : components(a.mat())) {
    const auto table = component_table(submatrix(a.mat(), comp));
    std::vector<double> next(acc.size(), 0.0);
    for_each_submask(done, [&](Subset s) {
      if (acc[s] == 0.0) return;
      for (Subset u = 0; u < table.size(); ++u) {
        if (table[u] == 0.0) continue;
        Subset g = s;
        for (std::size_t b = 0; b < comp.size(); ++b) {
          if (contains(u, b)) g |= singleton(comp[b]);
        }
        next[g] += acc[s] * table[u];
      }
    });
    for (std::size_t i : comp) done |= singleton(i);
    acc = std::move(next);
  }
  return MultiAffinePoly(n, std::move(acc));
}

UniPoly chi2(const HermitianMatrix& a) {
  const MultiAffinePoly p = char_multiaffine(a);
  auto c = diag_restrict_coeffs(convolve(p, p));
  double scale = 1.0;
  for (double& v : c) {
    v *= scale;
    scale *= 2.0;
  }
  return UniPoly(std::move(c));
}

UniPoly mixed_char_poly_symbolic(const PSDDecomposition& dec) {
  validate_decomposition(dec);
  check_decomposition_size(dec);
  const std::size_t m = dec.matrices.size();
  const std::size_t n = dec.matrices.front().n();
  const std::size_t zs = std::size_t{1} << m;
  // Polynomials multiaffine in z and of degree <= n in x: table[T * (n+1) + d].
  using Table = std::vector<cd>;
  const std::size_t width = n + 1;
  std::vector<Table> minor(std::size_t{1} << n);
  minor[0].assign(zs * width, cd{});
  minor[0][0] = 1.0;
  for (Subset cols = 1; cols < (Subset{1} << n); ++cols) {
    const std::size_t row = n - static_cast<std::size_t>(subset_size(cols));
    Table acc(zs * width, cd{});
    double sign = 1.0;
    for (std::size_t c : subset_indices(cols)) {
      const Table& rest = minor[cols ^ singleton(c)];
      for (std::size_t t = 0; t < zs; ++t) {
        for (std::size_t d = 0; d < width; ++d) {
          const cd v = rest[t * width + d];
          if (v == cd{}) continue;
          if (row == c && d + 1 < width) acc[t * width + d + 1] += sign * v;
          for (std::size_t i = 0; i < m; ++i) {
            if (contains(static_cast<Subset>(t), i)) continue;
            const cd e = dec.matrices[i](row, c);
            if (e != cd{}) acc[(t | singleton(i)) * width + d] += sign * e * v;
          }
        }
      }
      sign = -sign;
    }
    minor[cols] = std::move(acc);
  }
  const Table& det = minor[full_set(n)];
  std::vector<double> coeffs(width, 0.0);
  for (std::size_t d = 0; d < width; ++d) {
    cd sum{};
    double scale = 0.0;
    for (std::size_t t = 0; t < zs; ++t) {
      const cd v = det[t * width + d];
      sum += (subset_size(static_cast<Subset>(t)) % 2 == 0) ? v : -v;
      scale += std::abs(v);
    }
    coeffs[d] = real_part_checked(sum, scale, "mixed characteristic coefficient");
  }
  return UniPoly(std::move(coeffs));
}

UniPoly mixed_char_poly_interp(const PSDDecomposition& dec) {
  validate_decomposition(dec);
  check_decomposition_size(dec);
  const std::size_t m = dec.matrices.size();
  if (m > 4) throw std::length_error("interpolation route limited to 4 matrices");
  const std::size_t n = dec.matrices.front().n();
  // Per-variable weights so that sum_k w_k f(k) = f(0) - f'(0) for deg f <= d.
  std::vector<std::vector<double>> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto ev = eigenvalues(dec.matrices[i]);
    const double top = ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
    int d = 0;
    for (double l : ev) {
      if (std::abs(l) > 1e-9 * std::max(1.0, top)) ++d;
    }
    auto& w = weights[i];
    w.assign(static_cast<std::size_t>(d) + 1, 0.0);
    double harmonic = 0.0;
    double binom = 1.0;
    for (int k = 1; k <= d; ++k) {
      harmonic += 1.0 / k;
      binom = binom * (d - k + 1) / k;
      w[static_cast<std::size_t>(k)] = ((k % 2 == 0) ? 1.0 : -1.0) * binom / k;
    }
    w[0] = 1.0 + harmonic;
  }
  UniPoly acc;
  std::vector<std::size_t> node(m, 0);
  const Index nn = static_cast<Index>(n);
  while (true) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(nn, nn);
    double weight = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      sum += static_cast<double>(node[i]) * dec.matrices[i].mat();
      weight *= weights[i][node[i]];
    }
    // det(xI + M) = prod (x + lambda_j(M)).
    auto ev = eigenvalues(HermitianMatrix(sum));
    for (double& l : ev) l = -l;
    acc += UniPoly::from_roots(ev) * weight;
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++node[i] < weights[i].size()) break;
      node[i] = 0;
    }
    if (i == m) break;
  }
  // The z^T term of det[xI + sum z_i A_i] is homogeneous of degree |T| in the
  // entries, so it carries exactly x^{n-|T|}: powers below n - m vanish.
  std::vector<double> c(acc.coeffs().begin(), acc.coeffs().end());
  for (std::size_t d = 0; d + m < n && d < c.size(); ++d) c[d] = 0.0;
  return UniPoly(std::move(c));
}

UniPoly mixed_char_poly(const PSDDecomposition& dec) {
  return dec.matrices.size() <= 4 ? mixed_char_poly_interp(dec) : mixed_char_poly_symbolic(dec);
}

}  // namespace stablecalc
