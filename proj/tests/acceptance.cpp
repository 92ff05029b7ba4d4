// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace stablecalc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures without stopping; the first few are kept for the report.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  int checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed: " << first_;
    return {failures_ == 0, s.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string first_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

MultiAffinePoly random_real_multiaffine(std::size_t n, Rng& rng) {
  MultiAffinePoly p(n);
  for (Subset s = 0; s < p.size(); ++s) p[s] = rng.uniform(-1.0, 1.0);
  return p;
}

// Pairs of (float, exact) polynomials shared by the first two criteria.
struct Ensemble {
  std::vector<std::pair<MultiAffinePoly, MultiAffinePoly>> real;
  std::vector<std::pair<ExactMultiAffinePoly, ExactMultiAffinePoly>> exact;
};

const Ensemble& ensemble() {
  static const Ensemble e = [] {
    Ensemble out;
    Rng rng(20240501);
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(0, 6));
      out.real.emplace_back(random_real_multiaffine(n, rng), random_real_multiaffine(n, rng));
      out.exact.emplace_back(to_exact(random_integer_multiaffine(n, rng)), to_exact(random_integer_multiaffine(n, rng)));
    }
    return out;
  }();
  return e;
}

Outcome convolution_identity() {
  Tally t;
  double worst = 0.0;
  for (const auto& [p, q] : ensemble().exact) t.check(convolve(p, q) == convolve_def_oracle(p, q), "exact mismatch");
  for (const auto& [p, q] : ensemble().real) {
    const double d = oracle::rel_diff(convolve(p, q), convolve_def_oracle(p, q));
    worst = std::max(worst, d);
    t.check(d <= 1e-10, "float rel diff " + sci(d));
  }
  return t.outcome("500 exact + 500 float pairs, n <= 6, max float rel diff " + sci(worst));
}

Outcome flip_transport() {
  Tally t;
  double worst = 0.0;
  for (const auto& [p, q] : ensemble().exact) {
    t.check(apply_diffop(q, p) == convolve(ma_flip(q), p), "exact mismatch");
  }
  for (const auto& [p, q] : ensemble().real) {
    const double d = oracle::rel_diff(apply_diffop(q, p), convolve(ma_flip(q), p));
    worst = std::max(worst, d);
    t.check(d <= 1e-10, "float rel diff " + sci(d));
  }
  return t.outcome("same ensemble, max float rel diff " + sci(worst));
}

Outcome free_convolution() {
  Tally t;
  const UniPoly x2({0.0, 0.0, 1.0});
  t.check(free_additive_convolution(x2, x2, 2) == x2, "x^2 [+]_2 x^2 != x^2");
  Rng rng(20240502);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = rng.uniform_int(1, 4);
    const auto p = random_real_rooted(d, rng);
    const auto q = random_real_rooted(d, rng);
    const std::size_t k = static_cast<std::size_t>(d);
    const auto pol = convolve(polarize(oracle::dense_from_uni(p), k), polarize(oracle::dense_from_uni(q), k));
    const double diff = max_rel_diff(free_additive_convolution(p, q, d), diag_restrict(pol));
    worst = std::max(worst, diff);
    t.check(diff <= 1e-8, "d=" + std::to_string(d) + " diff " + sci(diff));
  }
  return t.outcome("100 monic real-rooted pairs, d <= 4, max diff " + sci(worst));
}

Outcome lieb_sokal_soundness() {
  Tally t;
  Rng rng(20240503);
  int instances = 0;
  while (instances < 200) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const auto p = random_stable_multiaffine(n, rng);
    const auto qbar = random_stable_multiaffine(n, rng);
    const auto q = ma_flip(qbar);
    const auto target = apply_diffop(q, p);
    if (target.is_zero()) continue;
    ++instances;
    const auto a = random_point_above(p, rng);
    const auto b = random_point_above(qbar, rng);
    const auto cert = als_bound(p, q, a, b);
    t.check(above_roots(target, cert.c), "c not above the roots, n=" + std::to_string(n));
    t.check(oracle::sign_constant_above(target, cert.c, rng), "sign change above c, n=" + std::to_string(n));
  }
  // Symmetric instances: char polynomials of x I + y J, at constant points.
  int symmetric = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    auto sym = [&](double x, double y) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), y);
      m.diagonal().array() += x;
      return char_multiaffine(HermitianMatrix::from_real(m));
    };
    const auto p = sym(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const auto qbar = sym(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const auto q = ma_flip(qbar);
    const auto target = apply_diffop(q, p);
    if (target.is_zero()) continue;
    ++symmetric;
    const std::vector<double> a(n, diag_threshold(p) + rng.uniform(0.05, 1.0));
    const std::vector<double> b(n, diag_threshold(qbar) + rng.uniform(0.05, 1.0));
    const auto cert = als_bound(p, q, a, b);
    const double cmax = *std::max_element(cert.c.begin(), cert.c.end());
    t.check(diag_threshold(target) <= cmax + 1e-9, "diagonal threshold above max c");
  }
  return t.outcome(std::to_string(instances) + " random + " + std::to_string(symmetric) + " symmetric instances, n <= 6");
}

Outcome expected_charpoly_criterion() {
  Tally t;
  Rng rng(20240504);
  double worst = 0.0;
  double worst_im = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 7));
    const auto mu = i % 2 ? random_measure(n, rng) : random_homogeneous_measure(n, rng);
    const auto a = random_hermitian(n, rng, i % 3 == 0);
    const auto f = expected_charpoly(mu, a);
    const double d = max_rel_diff(f, expected_charpoly_oracle(mu, a));
    const double im = max_imag_root_part(f);
    worst = std::max(worst, d);
    worst_im = std::max(worst_im, im);
    t.check(d <= 1e-8, mu.label() + " diff " + sci(d));
    t.check(im < 1e-7, mu.label() + " imaginary part " + sci(im));
  }
  return t.outcome("200 (mu, A), n <= 7, max diff " + sci(worst) + ", max |Im| " + sci(worst_im));
}

Outcome paving_existence() {
  Tally t;
  Rng rng(20240505);
  double slack = std::numeric_limits<double>::infinity();
  auto check = [&](const HermitianMatrix& a, std::size_t r, bool equal) {
    const double alpha = max_diagonal(a);
    const double bound = std::min(4.0 * std::pow(static_cast<double>(r), -0.25) + alpha, 1.0);
    const double best = paving_search(a, r, equal).lambda_max;
    slack = std::min(slack, bound - best);
    t.check(best <= bound + 1e-8, "n=" + std::to_string(a.n()) + " r=" + std::to_string(r) + " best " + sci(best));
  };
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 8));
    check(random_psd_contraction(n, 0.2, rng), static_cast<std::size_t>(rng.uniform_int(2, 3)), false);
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    check(random_psd_contraction(r * n, 0.2, rng), r, true);
  }
  return t.outcome("50 free + 20 equal-size pavings, diag <= 0.2, min slack " + sci(slack));
}

Outcome closed_forms() {
  Tally t;
  double worst = 0.0;
  for (double r : {4.0, 6.0, 9.0, 16.0, 25.0}) {
    const double eps = 1.0 / r;
    const double limit = std::pow(1.0 - std::sqrt(eps), 2);
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
      const double alpha = frac * limit;
      const double grid = oracle::grid_min_2d([&](double a, double b) { return oracle::paving_f(eps, alpha, a, b); },
                                              1e-6, 20.0, 1.0 + 1e-6, 20.0);
      const double d = std::abs(paving_gamma(eps, alpha) - grid);
      worst = std::max(worst, d);
      t.check(d <= 1e-4, "gamma eps=" + sci(eps) + " alpha=" + sci(alpha) + " off by " + sci(d));
    }
  }
  for (int r : {2, 3, 4, 6, 9}) {
    const double limit = std::pow(1.0 - 1.0 / std::sqrt(static_cast<double>(r)), 2);
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
      const double eps = frac * limit;
      const double rd = r;
      const double grid = oracle::grid_min_2d([&](double a, double b) { return oracle::mixed_f(eps, rd, a, b); }, 1e-6,
                                              30.0, rd + 1e-6, rd + 30.0);
      const double d = std::abs(mixed_char_bound(eps, r).optimum - grid);
      worst = std::max(worst, d);
      t.check(d <= 1e-4, "mixed r=" + std::to_string(r) + " eps=" + sci(eps) + " off by " + sci(d));
    }
  }
  return t.outcome("20 (eps, alpha) + 20 (eps, r) lattice points, max deviation " + sci(worst));
}

Outcome mixed_roots() {
  Tally t;
  Rng rng(20240507);
  double slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(n), 5));
    const auto res = random_rank1_resolution(n, m, rng);
    const double bound = (1.0 + std::sqrt(res.eps)) * (1.0 + std::sqrt(res.eps));
    const double root = uni_max_root(mixed_char_poly(res.dec));
    slack = std::min(slack, bound - root);
    t.check(root <= bound + 1e-8, "rank-one n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  // Rank-one resolutions give (x - 1)^n; grouping terms gives nontrivial roots.
  double grouped_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const std::size_t groups = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const auto fine = random_rank1_resolution(n, 8, rng).dec;
    PSDDecomposition dec;
    dec.resolution = true;
    double eps = 0.0;
    for (std::size_t g = 0; g < groups; ++g) {
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t j = g; j < fine.matrices.size(); j += groups) acc += fine.matrices[j].mat();
      dec.matrices.emplace_back(acc);
      eps = std::max(eps, acc.trace().real());
    }
    const double bound = (1.0 + std::sqrt(eps)) * (1.0 + std::sqrt(eps));
    const double root = uni_max_root(mixed_char_poly(dec));
    grouped_slack = std::min(grouped_slack, bound - root);
    t.check(root <= bound + 1e-8, "grouped n=" + std::to_string(n) + " groups=" + std::to_string(groups));
  }
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  for (int r : {2, 3, 4, 6, 9, 16}) {
    const double limit = std::pow(1.0 - 1.0 / std::sqrt(static_cast<double>(r)), 2);
    for (double frac : {0.05, 0.25, 0.5, 0.75, 1.0}) {
      const double eps = frac * limit;
      const auto mb = mixed_char_bound(eps, r);
      const double power = std::pow(1.0 + std::sqrt(r * eps), 2);
      t.check(mb.bound >= power - 1e-12, "bound below (1+sqrt(r eps))^2 at r=" + std::to_string(r));
      t.check(mb.optimum >= power - 1e-12, "optimum below (1+sqrt(r eps))^2 at r=" + std::to_string(r));
      if (frac == 1.0) t.check(std::abs(mb.optimum - power) <= 1e-9 * power, "optimum off the edge value");
      min_ratio = std::min(min_ratio, mb.bound / power);
      max_ratio = std::max(max_ratio, mb.bound / power);
    }
  }
  return t.outcome("100 rank-one + 60 grouped resolutions, min slack " + sci(std::min(slack, grouped_slack)) +
                   "; bound / (1+sqrt(r eps))^2 in [" + sci(min_ratio) + ", " + sci(max_ratio) + "]");
}

Outcome potential_bound() {
  Tally t;
  Rng rng(20240508);
  double slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto a = random_psd_contraction(n, rng.uniform(0.05, 0.95), rng);
    const double alpha = max_diagonal(a);
    const auto p = char_multiaffine(a);
    for (double b : {1.1, 2.0, 5.0}) {
      const std::vector<double> point(n, b);
      const double bound = alpha / (b - 1.0) + (1.0 - alpha) / b;
      for (std::size_t k = 0; k < n; ++k) {
        const double phi = potential(p, point, k);
        slack = std::min(slack, bound - phi);
        t.check(phi <= bound + 1e-9, "b=" + sci(b) + " phi " + sci(phi) + " > " + sci(bound));
      }
    }
  }
  return t.outcome("100 PSD contractions, b in {1.1, 2, 5}, min slack " + sci(slack));
}

Outcome barrier_convexity() {
  Tally t;
  Rng rng(20240509);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const DensePoly p = i % 2 ? to_dense(random_stable_multiaffine(n, rng)) : random_stable_dense(n, 2, rng);
    const auto a = random_point_above(p, rng);
    const auto v = oracle::positive_direction(n, rng);
    const auto w = oracle::positive_direction(n, rng);
    const double h = 1e-3;
    auto phi = [&](double s) {
      auto x = a;
      for (std::size_t j = 0; j < n; ++j) x[j] += s * w[j];
      return potential(p, x, std::span<const double>(v));
    };
    const double f0 = phi(0.0);
    const double f1 = phi(h);
    const double f2 = phi(2.0 * h);
    t.check(f0 >= -1e-12, "negative potential");
    t.check((f1 - f0) / h <= 1e-8, "increasing along w: " + sci((f1 - f0) / h));
    t.check((f2 - 2.0 * f1 + f0) / (h * h) >= -1e-6, "concave along w: " + sci((f2 - 2.0 * f1 + f0) / (h * h)));
  }
  return t.outcome("100 above-roots points, h = 1e-3");
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double limit_seconds;  // 0: no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "convolution identity", convolution_identity, 10.0},
      {2, "flip transport", flip_transport, 0.0},
      {3, "free convolution", free_convolution, 0.0},
      {4, "lieb-sokal soundness", lieb_sokal_soundness, 60.0},
      {5, "expected characteristic polynomial", expected_charpoly_criterion, 0.0},
      {6, "paving existence", paving_existence, 300.0},
      {7, "closed-form optimizations", closed_forms, 0.0},
      {8, "mixed characteristic roots", mixed_roots, 0.0},
      {9, "potential bound", potential_bound, 0.0},
      {10, "barrier convexity", barrier_convexity, 0.0},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing
              << ")" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
