#include "stablecalc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>

#include "stablecalc/lieb_sokal.hpp"
#include "stablecalc/matrix_polys.hpp"
#include "stablecalc/paving.hpp"
#include "stablecalc/polarization.hpp"
#include "stablecalc/random.hpp"
#include "stablecalc/rayleigh.hpp"
#include "stablecalc/stable_calculus.hpp"

namespace stablecalc {

namespace {

using Check = std::function<void(bool, const std::string&)>;

SuiteResult run_suite(const std::string& name, std::size_t samples, std::uint64_t seed,
                      const std::function<void(Rng&, std::size_t, const Check&)>& body) {
  SuiteResult res;
  res.name = name;
  std::uint64_t salt = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) salt = (salt ^ ch) * 0x100000001b3ULL;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng = Rng::for_instance(seed ^ salt, k);
    const Check check = [&](bool ok, const std::string& what) {
      ++res.checked;
      if (!ok) {
        ++res.failed;
        if (res.detail.empty()) res.detail = "instance " + std::to_string(k) + ": " + what;
      }
    };
    try {
      body(rng, k, check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
  }
  return res;
}

double rel_diff(const MultiAffinePoly& a, const MultiAffinePoly& b) {
  double diff = 0.0;
  double ref = 1.0;
  for (Subset s = 0; s < a.size(); ++s) {
    diff = std::max(diff, std::abs(a[s] - b[s]));
    ref = std::max(ref, std::abs(b[s]));
  }
  return diff / ref;
}

DensePoly uni_to_dense(const UniPoly& p) {
  DensePoly out(1, {}, {std::max(0, p.degree())});
  for (int i = 0; i <= p.degree(); ++i) out.add_term({i}, p[static_cast<std::size_t>(i)]);
  return out;
}

std::size_t draw_n(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform_int(static_cast<int>(lo), static_cast<int>(std::max(lo, hi))));
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyConfig& cfg) {
  const std::size_t nmax = cfg.max_n;
  const std::size_t s = cfg.samples;
  std::vector<SuiteResult> out;

  out.push_back(run_suite("convolution", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 0, std::min<std::size_t>(nmax, 8));
    const auto p = random_integer_multiaffine(n, rng);
    const auto q = random_integer_multiaffine(n, rng);
    check(convolve(to_exact(p), to_exact(q)) == convolve_def_oracle(to_exact(p), to_exact(q)), "exact mismatch");
    const auto fp = random_stable_multiaffine(n, rng);
    const auto fq = random_stable_multiaffine(n, rng);
    check(rel_diff(convolve(fp, fq), convolve_def_oracle(fp, fq)) <= 1e-10, "float mismatch");
  }));

  out.push_back(run_suite("flip-transport", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 0, std::min<std::size_t>(nmax, 10));
    const auto p = to_exact(random_integer_multiaffine(n, rng));
    const auto q = to_exact(random_integer_multiaffine(n, rng));
    check(apply_diffop(q, p) == convolve(ma_flip(q), p), "q(d)p differs from flip(q)*p");
  }));

  out.push_back(run_suite("free-convolution", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const int d = rng.uniform_int(1, static_cast<int>(std::clamp<std::size_t>(nmax, 1, 4)));
    const auto p = random_real_rooted(d, rng);
    const auto q = random_real_rooted(d, rng);
    const auto direct = free_additive_convolution(p, q, d);
    const auto viaPol = diag_restrict(convolve(polarize(uni_to_dense(p), d), polarize(uni_to_dense(q), d)));
    check(max_rel_diff(direct, viaPol) <= 1e-8, "free convolution differs from Pol(p)*Pol(q)");
  }));

  out.push_back(run_suite("lieb-sokal", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 1, std::min<std::size_t>(nmax, 8));
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto p = random_stable_multiaffine(n, rng);
      const auto qbar = random_stable_multiaffine(n, rng);
      const auto q = ma_flip(qbar);
      if (apply_diffop(q, p).is_zero()) continue;
      const auto a = random_point_above(p, rng);
      const auto b = random_point_above(qbar, rng);
      check(als_bound(p, q, a, b).verified, "certificate point not above the roots of q(d)p");
      return;
    }
  }));

  out.push_back(run_suite("expected-charpoly", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 1, std::min<std::size_t>(nmax, 10));
    const auto mu = rng.uniform() < 0.5 ? random_homogeneous_measure(n, rng) : random_measure(n, rng);
    const auto a = random_hermitian(n, rng, rng.uniform() < 0.5);
    const auto formula = expected_charpoly(mu, a);
    check(max_rel_diff(formula, expected_charpoly_oracle(mu, a)) <= 1e-8, "formula differs from enumeration");
    check(max_imag_root_part(formula) < 1e-7, "expected characteristic polynomial is not real rooted");
  }));

  out.push_back(run_suite("paving", std::max<std::size_t>(1, s / 5), cfg.seed,
                          [&](Rng& rng, std::size_t, const Check& check) {
                            const std::size_t n = draw_n(rng, 2, std::min<std::size_t>(nmax, 8));
                            const std::size_t r = static_cast<std::size_t>(rng.uniform_int(2, 3));
                            const auto a = random_psd_contraction(n, 0.2, rng);
                            const double alpha = max_diagonal(a);
                            const double bound = std::min(4.0 * std::pow(r, -0.25) + alpha, 1.0);
                            check(paving_search(a, r).lambda_max <= bound + 1e-8, "no paving within the bound");
                          }));

  out.push_back(run_suite("mixed-charpoly", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 1, std::min<std::size_t>(nmax, 5));
    const std::size_t m = draw_n(rng, n, 5);
    const auto res = random_rank1_resolution(n, m, rng);
    const double root = uni_max_root(mixed_char_poly(res.dec));
    const double bound = (1.0 + std::sqrt(res.eps)) * (1.0 + std::sqrt(res.eps));
    check(root <= bound + 1e-8, "largest root above (1+sqrt(eps))^2");
  }));

  out.push_back(run_suite("potential-bound", s, cfg.seed, [&](Rng& rng, std::size_t, const Check& check) {
    const std::size_t n = draw_n(rng, 1, std::min<std::size_t>(nmax, 10));
    const auto a = random_psd_contraction(n, rng.uniform(0.05, 0.95), rng);
    const double alpha = max_diagonal(a);
    const auto p = char_multiaffine(a);
    for (double b : {1.1, 2.0, 5.0}) {
      const std::vector<double> pt(n, b);
      const double limit = alpha / (b - 1.0) + (1.0 - alpha) / b + 1e-9;
      for (std::size_t k = 0; k < n; ++k) check(potential(p, pt, k) <= limit, "potential above the bound");
    }
  }));

  return out;
}

}  // namespace stablecalc
