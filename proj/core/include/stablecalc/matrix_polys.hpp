#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "stablecalc/multiaffine.hpp"
#include "stablecalc/subset.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

/// Complex Hermitian matrix. Construction checks conjugate symmetry to 1e-12
/// (relative to the largest entry) and stores the exactly symmetrized matrix.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::MatrixXcd m);
  static HermitianMatrix from_real(const Eigen::MatrixXd& m);
  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(const std::vector<double>& d);

  std::size_t n() const { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& mat() const { return m_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  bool is_real() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Matrices A_1..A_m, each PSD; `resolution` asserts sum A_i = I.
struct PSDDecomposition {
  std::vector<HermitianMatrix> matrices;
  bool resolution = false;
};

/// Throws std::invalid_argument unless every matrix is PSD to -1e-10, sizes agree
/// and, when flagged, ||sum A_i - I|| <= 1e-9.
void validate_decomposition(const PSDDecomposition& dec);

/// Ascending eigenvalues.
std::vector<double> eigenvalues(const HermitianMatrix& a);
double lambda_max(const HermitianMatrix& a);
double max_diagonal(const HermitianMatrix& a);
bool is_psd(const HermitianMatrix& a, double tol = 1e-10);

/// Characteristic polynomial det(xI - A) built from the eigenvalues; 1 for 0x0.
UniPoly charpoly(const HermitianMatrix& a);

HermitianMatrix principal_submatrix(const HermitianMatrix& a, Subset s);

/// A (+) A (+) ... (+) A, r copies.
HermitianMatrix block_diag(const HermitianMatrix& a, std::size_t r);

/// det[Z - A] with Z = diag(z_1..z_n): coefficient at S is
/// (-1)^{n-|S|} det A restricted to the complement of S. Computed per connected
/// component of the sparsity graph from principal minors.
MultiAffinePoly char_multiaffine(const HermitianMatrix& a);

/// chi_2[A](x) = d^[n] det[Z - A]^2 at z = x, computed as (p*p)(2x, ..., 2x).
UniPoly chi2(const HermitianMatrix& a);

/// mu[A_1..A_m](x) = prod (1 - d_i) det[xI + sum z_i A_i] at z = 0.
/// Dispatches to the interpolation route for m <= 4, symbolic otherwise.
UniPoly mixed_char_poly(const PSDDecomposition& dec);
/// Laplace expansion memoized over column subsets, truncated to multiaffine z terms.
UniPoly mixed_char_poly_symbolic(const PSDDecomposition& dec);
/// Exact functional f(0) - f'(0) per variable on integer grids 0..rank(A_i).
UniPoly mixed_char_poly_interp(const PSDDecomposition& dec);

}  // namespace stablecalc
