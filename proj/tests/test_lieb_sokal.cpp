#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace stablecalc;

namespace {

MultiAffinePoly mono(std::size_t n, std::vector<std::size_t> idx, double c = 1.0) {
  return MultiAffinePoly::monomial(n, subset_from_indices(idx, n), c);
}

DensePoly dense_mono(std::vector<int> e, double c = 1.0) {
  DensePoly p(e.size(), {}, e);
  p.add_term(e, c);
  return p;
}

// Permutation-invariant stable polynomial det[Z - (x I + y J)].
MultiAffinePoly symmetric_char(std::size_t n, double x, double y) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), y);
  m.diagonal().array() += x;
  return char_multiaffine(HermitianMatrix::from_real(m));
}

}  // namespace

TEST(AlsBound, ConstantTarget) {
  // q = z over one variable: flip(q) = 1, q(d)p = 1 and c = b.
  const auto cert = als_bound(mono(1, {0}), mono(1, {0}), std::vector<double>{2.0}, std::vector<double>{0.7});
  EXPECT_NEAR(cert.phis[0], 0.5, 1e-15);
  EXPECT_NEAR(cert.c[0], 0.7, 1e-15);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.target, DensePoly::constant(1, 1.0));
}

TEST(AlsBound, WorkedTwoVariableExample) {
  const auto p = mono(2, {0, 1}) - mono(2, {});
  const auto cert = als_bound(p, mono(2, {0}), std::vector<double>{2.0, 2.0}, std::vector<double>{0.0, 1.0});
  EXPECT_NEAR(cert.phis[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(cert.phis[1], 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(cert.c[0], 0.5, 1e-15);
  EXPECT_NEAR(cert.c[1], 2.4, 1e-15);
  EXPECT_EQ(to_multiaffine(cert.target), mono(2, {1}));
  EXPECT_TRUE(cert.verified);
  EXPECT_FALSE(cert.unbounded[0] || cert.unbounded[1]);
}

TEST(AlsBound, TopOperatorGivesConstant) {
  const auto p = char_multiaffine(HermitianMatrix::diagonal({1.0, 1.0}));
  const std::vector<double> a{2.0, 3.0};
  const std::vector<double> b{0.25, -4.0};
  const auto cert = als_bound(p, mono(2, {0, 1}), a, b);
  EXPECT_EQ(to_multiaffine(cert.target), MultiAffinePoly::constant(2, 1.0));
  EXPECT_NEAR(cert.c[0], a[0] + b[0] - 1.0, 1e-14);
  EXPECT_NEAR(cert.c[1], a[1] + b[1] - 2.0, 1e-14);
  EXPECT_TRUE(cert.verified);
}

TEST(AlsBound, RejectsBadInputs) {
  const auto p = mono(2, {0, 1}) - mono(2, {});
  EXPECT_THROW(als_bound(p, mono(2, {0}), std::vector<double>{1.0, 0.5}, std::vector<double>{0.0, 1.0}),
               std::invalid_argument);
  EXPECT_THROW(als_bound(p, mono(2, {0}), std::vector<double>{2.0, 2.0}, std::vector<double>{0.0, -1.0}),
               std::invalid_argument);
  // q(d)p = 0: p does not involve z2 and every term of q contains z2.
  EXPECT_THROW(als_bound(mono(2, {0}), mono(2, {1}), std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 1.0}),
               std::invalid_argument);
}

TEST(AlsBound, SoundOnRandomInstances) {
  Rng rng(51);
  int done = 0;
  for (int t = 0; t < 400 && done < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const auto p = random_stable_multiaffine(n, rng);
    const auto qbar = random_stable_multiaffine(n, rng);
    const auto q = ma_flip(qbar);
    if (apply_diffop(q, p).is_zero()) continue;
    const auto a = random_point_above(p, rng);
    const auto b = random_point_above(qbar, rng);
    const auto cert = als_bound(p, q, a, b);
    ASSERT_TRUE(cert.verified) << "instance " << t;
    std::vector<double> c = cert.c;
    for (std::size_t i = 0; i < n; ++i) {
      if (cert.unbounded[i]) c[i] = 0.0;
    }
    EXPECT_TRUE(oracle::sign_constant_above(cert.target, c, rng));
    ++done;
  }
  EXPECT_EQ(done, 200);
}

TEST(AlsBound, DiagonalThresholdBelowCertificate) {
  Rng rng(52);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const auto p = symmetric_char(n, rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5));
    const auto qbar = symmetric_char(n, rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5));
    const double s = diag_threshold(p) + rng.uniform(0.05, 1.0);
    const double u = diag_threshold(qbar) + rng.uniform(0.05, 1.0);
    const auto cert = als_bound(p, ma_flip(qbar), std::vector<double>(n, s), std::vector<double>(n, u));
    ASSERT_TRUE(cert.verified);
    const double cmax = *std::max_element(cert.c.begin(), cert.c.end());
    EXPECT_LE(diag_threshold(cert.target), cmax + 1e-9);
  }
}

TEST(AlsBound, IncreasingAKeepsCertificateValid) {
  Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto p = random_stable_multiaffine(n, rng);
    const auto qbar = random_stable_multiaffine(n, rng);
    if (apply_diffop(ma_flip(qbar), p).is_zero()) continue;
    const auto a = random_point_above(p, rng);
    const auto b = random_point_above(qbar, rng);
    auto a2 = a;
    for (double& v : a2) v += rng.uniform(0.0, 2.0);
    const auto c1 = als_bound(p, ma_flip(qbar), a, b);
    const auto c2 = als_bound(p, ma_flip(qbar), a2, b);
    EXPECT_TRUE(c2.verified);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(potential(p, a2, i), potential(p, a, i) + 1e-12);
      EXPECT_LE(c2.phis[i], c1.phis[i] + 1e-12);
    }
  }
}

TEST(AlsPolarized, NomaExample) {
  // q = z, p = z^m: q(d)p = m z^{m-1}.
  for (int m = 1; m <= 4; ++m) {
    const auto cert = als_bound_polarized(dense_mono({m}), mono(1, {0}), std::vector<double>{1.0},
                                          std::vector<double>{1.0}, static_cast<std::size_t>(m));
    EXPECT_EQ(cert.target, dense_mono({m - 1}, m)) << "m = " << m;
  }
}

TEST(AlsPolarized, WorkedSquareExample) {
  const auto cert =
      als_bound_polarized(dense_mono({2}), mono(1, {0}), std::vector<double>{3.0}, std::vector<double>{1.0}, 2);
  EXPECT_NEAR(cert.phis[0], 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(cert.c[0], 2.8, 1e-14);
  EXPECT_TRUE(cert.verified);
  EXPECT_GT(cert.c[0], uni_max_root(oracle::uni_from_dense(cert.target)));
}

TEST(AlsPolarized, ReducesToAlsForMultiaffine) {
  Rng rng(54);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto p = random_stable_multiaffine(n, rng);
    const auto qbar = random_stable_multiaffine(n, rng);
    if (apply_diffop(ma_flip(qbar), p).is_zero()) continue;
    const auto a = random_point_above(p, rng);
    const auto b = random_point_above(qbar, rng);
    const auto x = als_bound(p, ma_flip(qbar), a, b);
    const auto y = als_bound_polarized(to_dense(p), ma_flip(qbar), a, b, 1);
    EXPECT_EQ(x.c, y.c);
    EXPECT_EQ(x.phis, y.phis);
    EXPECT_EQ(x.target, y.target);
  }
}

TEST(AlsPolarized, SoundOnRandomInstances) {
  Rng rng(55);
  int done = 0;
  for (int t = 0; t < 200 && done < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const auto p = random_stable_dense(n, k, rng);
    const auto qbar = random_stable_multiaffine(n, rng);
    const auto q = ma_flip(qbar);
    const auto a = random_point_above(polarize(p, k), rng);
    // The replicated point must be constant on blocks: use the block minimum shifted up.
    std::vector<double> ab(n);
    for (std::size_t i = 0; i < n; ++i) {
      ab[i] = *std::max_element(a.begin() + static_cast<long>(i * k), a.begin() + static_cast<long>((i + 1) * k));
    }
    const auto qt = ma_flip(replicate_operator(q, k));
    const auto bt = random_point_above(qt, rng);
    std::vector<double> bb(n);
    for (std::size_t i = 0; i < n; ++i) {
      bb[i] = *std::max_element(bt.begin() + static_cast<long>(i * k), bt.begin() + static_cast<long>((i + 1) * k));
    }
    BoundCertificate cert;
    try {
      cert = als_bound_polarized(p, q, ab, bb, k);
    } catch (const std::invalid_argument& e) {
      // Only the vanishing-target case is acceptable here.
      ASSERT_NE(std::string(e.what()).find("vanishes"), std::string::npos) << e.what();
      continue;
    }
    EXPECT_TRUE(cert.verified);
    EXPECT_TRUE(oracle::sign_constant_above(cert.target, cert.c, rng));
    // Sym(q~(d) Pol(p)) = q(d)p computed directly.
    DensePoly direct(n, {}, p.max_deg());
    std::vector<int> orders(n);
    for (Subset s = 0; s < q.size(); ++s) {
      if (q[s] == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) orders[i] = contains(s, i) ? 1 : 0;
      direct += dense_diffop<double>(orders, p) * q[s];
    }
    EXPECT_LE(oracle::rel_diff(cert.target, direct), 1e-10);
    ++done;
  }
  EXPECT_EQ(done, 40);
}

TEST(ConvolutionBound, CorrectFormHolds) {
  Rng rng(56);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto p = random_stable_multiaffine(n, rng);
    const auto q = random_stable_multiaffine(n, rng);
    if (convolve(p, q).is_zero()) continue;
    const auto a = random_point_above(p, rng);
    const auto b = random_point_above(q, rng);
    const auto cert = convolution_bound(p, q, a, b);
    EXPECT_TRUE(cert.verified);
    // Uniform potential bounds phi1 >= Phi_p^i(a), phi2 >= Phi_q^i(b).
    double phi1 = 0.0;
    double phi2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      phi1 = std::max(phi1, potential(p, a, i));
      phi2 = std::max(phi2, potential(q, b, i));
    }
    if (phi1 + phi2 <= kTolerance) continue;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i] - 1.0 / (phi1 + phi2);
    EXPECT_TRUE(above_roots(convolve(p, q), c));
  }
}

TEST(ConvolutionBound, MidpointFormFails) {
  // p = q = z - 10 and a = b = 11: p*q = z - 20 while (a+b)/2 - 1/(phi1+phi2) = 10.5.
  const auto p = mono(1, {0}) - mono(1, {}, 10.0);
  const std::vector<double> a{11.0};
  EXPECT_EQ(convolve(p, p), mono(1, {0}) - mono(1, {}, 20.0));
  const double phi = potential(p, a, 0) + potential(p, a, 0);
  const double midpoint = (a[0] + a[0]) / 2.0 - 1.0 / phi;
  EXPECT_DOUBLE_EQ(midpoint, 10.5);
  EXPECT_FALSE(above_roots(convolve(p, p), std::vector<double>{midpoint}));
  const auto cert = convolution_bound(p, p, a, a);
  EXPECT_DOUBLE_EQ(cert.c[0], 21.5);
  EXPECT_TRUE(cert.verified);
}

TEST(ShiftDelta, Examples) {
  const auto p = mono(2, {0, 1}) - mono(2, {});
  EXPECT_NEAR(shift_delta(p, 0, 1, std::vector<double>{2.0, 2.0}), 0.75, 1e-15);
  const std::vector<double> lambda{0.5, -1.0, 2.0};
  const auto q = char_multiaffine(HermitianMatrix::diagonal(lambda));
  const std::vector<double> a{1.0, 0.5, 4.0};
  EXPECT_NEAR(shift_delta(q, 0, 2, a), 1.0 / (1.0 / (a[0] - lambda[0]) + 1.0 / (a[2] - lambda[2])), 1e-14);
  EXPECT_THROW(shift_delta(q, 1, 1, a), std::invalid_argument);
  // Neither coordinate present: unlimited budget.
  EXPECT_EQ(shift_delta(mono(3, {2}), 0, 1, std::vector<double>{1.0, 1.0, 1.0}),
            std::numeric_limits<double>::infinity());
}

TEST(ShiftDelta, PositiveAboveTheRoots) {
  Rng rng(57);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 6));
    const auto p = random_stable_multiaffine(n, rng);
    const auto a = random_point_above(p, rng);
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1));
    const std::size_t j = (i + 1) % n;
    EXPECT_GT(shift_delta(p, i, j, a), 0.0);
  }
}

TEST(ShiftStep, SingleStepKeepsPotentials) {
  Rng rng(58);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const auto p = random_stable_multiaffine(n, rng);
    const auto a = random_point_above(p, rng);
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    const auto dp = ma_partial(p, i) + ma_partial(p, j);
    if (dp.is_zero()) continue;
    const double budget = shift_delta(p, i, j, a);
    if (!std::isfinite(budget)) continue;
    const double spend = budget * rng.uniform(0.1, 0.99);
    const double split = rng.uniform();
    auto shifted = a;
    shifted[i] -= spend * split;
    shifted[j] -= spend * (1.0 - split);
    ASSERT_TRUE(above_roots(dp, shifted)) << "instance " << t;
    for (std::size_t k = 0; k < n; ++k) {
      const double before = potential(p, a, k);
      EXPECT_LE(potential(dp, shifted, k), before + 1e-9 * std::max(1.0, before)) << "instance " << t;
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ShiftStep, IteratedShiftKeepsPotentials) {
  Rng rng(59);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto p = random_stable_multiaffine(2 * n, rng);
    const auto a = random_point_above(p, rng);
    MultiAffinePoly q = p;
    auto shifted = a;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double budget = shift_delta(p, i, n + i, a);
      if (!std::isfinite(budget)) {
        finite = false;
        break;
      }
      const double spend = budget * rng.uniform(0.1, 0.99);
      const double split = rng.uniform();
      shifted[i] -= spend * split;
      shifted[n + i] -= spend * (1.0 - split);
      q = ma_partial(q, i) + ma_partial(q, n + i);
    }
    if (!finite || q.is_zero()) continue;
    ASSERT_TRUE(above_roots(q, shifted)) << "instance " << t;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      const double before = potential(p, a, k);
      EXPECT_LE(potential(q, shifted, k), before + 1e-9 * std::max(1.0, before)) << "instance " << t;
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(ClosedForms, MinAExamplesAndGrid) {
  const auto r = min_a_closed_form(0.25, 1.0);
  EXPECT_NEAR(r.a_star, 0.25, 1e-15);
  EXPECT_NEAR(r.value, -0.25, 1e-15);
  EXPECT_EQ(min_a_closed_form(1.0, 3.0).value, 0.0);
  for (double eps : {0.01, 0.1, 0.25, 0.6}) {
    for (double x : {0.3, 1.0, 2.5}) {
      double arg = 0.0;
      const double g = oracle::grid_min_1d([&](double a) { return a - 1.0 / (eps / a + x); }, 1e-4, 100.0, &arg);
      const auto c = min_a_closed_form(eps, x);
      EXPECT_NEAR(c.value, g, 1e-6);
      EXPECT_NEAR(c.a_star, arg, 1e-4);
    }
  }
  EXPECT_THROW(min_a_closed_form(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(min_a_closed_form(0.5, -1.0), std::invalid_argument);
}

TEST(ClosedForms, PavingGamma) {
  EXPECT_NEAR(paving_gamma(1.0 / 16, 0.25), 0.8984, 1e-4);
  const double grid = oracle::grid_min_2d(
      [](double a, double b) { return oracle::paving_f(1.0 / 16, 0.25, a, b); }, 1e-6, 5.0, 1.0 + 1e-6, 6.0);
  EXPECT_NEAR(paving_gamma(1.0 / 16, 0.25), grid, 1e-4);
  EXPECT_EQ(paving_gamma(0.5, 0.5), 1.0);
  // gamma - alpha decays like eps^{1/4}.
  EXPECT_NEAR(paving_gamma(1e-24, 0.3), 0.3, 1e-5);
  EXPECT_GT(paving_gamma(1e-12, 0.3) - 0.3, 1e-3);
  EXPECT_LE(paving_gamma(1.0 / 16, 0.25), paving_simple_bound(1.0 / 16, 0.25));
  EXPECT_NEAR(paving_simple_bound(1.0 / 16, 0.25), 2.25, 1e-15);
}

TEST(ClosedForms, GammaBelowSimpleBound) {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double eps = i / 20.0;
      const double alpha = j / 21.0;
      EXPECT_LE(paving_gamma(eps, alpha), paving_simple_bound(eps, alpha) + 1e-12);
    }
  }
}

TEST(ClosedForms, MixedCharBound) {
  const auto m = mixed_char_bound(0.25, 4);
  EXPECT_NEAR(m.bound, 9.0, 1e-12);
  EXPECT_NEAR(m.mss_power, 4.0, 1e-12);
  EXPECT_NEAR(m.mss_single, 2.25, 1e-12);
  EXPECT_NEAR(mixed_char_bound(1e-16, 4).bound, 1.0, 1e-3);
  EXPECT_NEAR(mixed_char_bound(1e-16, 4).optimum, 1.0, 1e-3);
  EXPECT_THROW(mixed_char_bound(0.3, 4), std::invalid_argument);
  EXPECT_THROW(mixed_char_bound(0.1, 1), std::invalid_argument);
}

TEST(ClosedForms, MixedOptimumMatchesGrid) {
  for (int r : {2, 3, 4, 6}) {
    const double limit = std::pow(1.0 - 1.0 / std::sqrt(r), 2.0);
    for (double frac : {0.1, 0.4, 0.8}) {
      const double eps = frac * limit;
      const auto m = mixed_char_bound(eps, r);
      const double grid = oracle::grid_min_2d([&](double a, double b) { return oracle::mixed_f(eps, r, a, b); },
                                              1e-9, 5.0, r + 1e-9, r + 20.0);
      EXPECT_NEAR(m.optimum, grid, 1e-4) << "r = " << r << ", eps = " << eps;
      EXPECT_NEAR(oracle::mixed_f(eps, r, m.a_star, m.b_star), m.optimum, 1e-9);
      EXPECT_GE(m.bound, m.optimum - 1e-12);
      EXPECT_GE(m.bound, m.mss_power - 1e-12);
    }
  }
}
