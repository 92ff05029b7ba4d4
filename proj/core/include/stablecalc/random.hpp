#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/matrix_polys.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/rayleigh.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

/// Seeded generator with platform-independent output.
///
/// The standard distributions are implementation defined, so the uniform and
/// normal draws are derived from the raw mt19937_64 stream by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Independent stream for instance `id` of a run seeded with `seed`.
  static Rng for_instance(std::uint64_t seed, std::uint64_t id);

  std::uint64_t next_u64() { return eng_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed n x n unitary (QR of a complex Gaussian matrix, phases fixed).
Eigen::MatrixXcd haar_unitary(std::size_t n, Rng& rng);

/// Hermitian matrix with complex Gaussian entries (real symmetric when `real`).
HermitianMatrix random_hermitian(std::size_t n, Rng& rng, bool real = false);

/// PSD contraction V diag(u) V*, u uniform in [0, 1], rescaled so the largest
/// diagonal entry is at most alpha.
HermitianMatrix random_psd_contraction(std::size_t n, double alpha, Rng& rng);

/// Rank-one resolution of the identity in dimension n with m >= n terms,
/// v_i = column i of the first n rows of an m x m Haar unitary.
struct Rank1Resolution {
  PSDDecomposition dec;
  /// max_i ||v_i||^2 = max_i Trace(A_i).
  double eps;
};
Rank1Resolution random_rank1_resolution(std::size_t n, std::size_t m, Rng& rng);

/// Real-rooted polynomial lead * prod (x - r_i), r_i uniform in [lo, hi].
UniPoly random_real_rooted(int degree, Rng& rng, double lo = -3.0, double hi = 3.0, double lead = 1.0);

/// Multiaffine polynomial with integer coefficients in [-range, range].
MultiAffinePoly random_integer_multiaffine(std::size_t n, Rng& rng, int range = 5);
ExactMultiAffinePoly to_exact(const MultiAffinePoly& p);

/// Random real stable multiaffine polynomial with positive top coefficients,
/// drawn from determinantal forms det[Z - A], determinantal generating
/// polynomials, linear products, scaled elementary symmetric polynomials,
/// tensor products and partial derivatives of these.
MultiAffinePoly random_stable_multiaffine(std::size_t n, Rng& rng);

/// Random stable p of degree at most k per variable: a product of k
/// multiaffine stable factors.
DensePoly random_stable_dense(std::size_t n, std::size_t k, Rng& rng);

/// Random Strongly Rayleigh measure: product, determinantal, or normalized
/// elementary symmetric. Product and contraction-kernel measures are in
/// general not homogeneous.
SRMeasure random_measure(std::size_t n, Rng& rng);

/// Random homogeneous Strongly Rayleigh measure on n items: a determinantal
/// measure with a random rank-k projection kernel, or a normalized elementary
/// symmetric polynomial.
SRMeasure random_homogeneous_measure(std::size_t n, Rng& rng);

/// A random point strictly above the roots of p: the diagonal threshold plus
/// independent margins in [lo, hi].
std::vector<double> random_point_above(const MultiAffinePoly& p, Rng& rng, double lo = 0.05, double hi = 1.0);
std::vector<double> random_point_above(const DensePoly& p, Rng& rng, double lo = 0.05, double hi = 1.0);

}  // namespace stablecalc
