#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "stablecalc/stablecalc.hpp"

namespace stablecalc::cli {

namespace {

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError(out_path + ": cannot open for writing");
  f << text;
}

void emit_json(const Json& j, const std::string& out_path, std::ostream& out) {
  emit(j.dump(2) + "\n", out_path, out);
}

bool has_high_degree(const DensePoly& p) {
  for (std::size_t i = 0; i < p.n_vars(); ++i) {
    if (p.degree(i) > 1) return true;
  }
  return false;
}

SRMeasure load_measure(const std::string& spec) {
  const auto pos = spec.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && spec[pos] == '{') return measure_from_json(parse_json_text(spec, "--measure"));
  return measure_from_json(load_json_file(spec));
}

Json uni_report(const UniPoly& p) {
  Json j = to_json(p);
  if (p.degree() >= 1) {
    j["max_root"] = uni_max_root(p);
    j["max_imag_root_part"] = max_imag_root_part(p);
  }
  return j;
}

// q(d)p for multiaffine q and any p: sum over T of q_T d^T p.
DensePoly apply_to_dense(const MultiAffinePoly& q, const DensePoly& p) {
  DensePoly out(p.n_vars(), {}, p.max_deg());
  std::vector<int> orders(p.n_vars());
  for (Subset t = 0; t < q.size(); ++t) {
    if (q[t] == 0.0) continue;
    for (std::size_t i = 0; i < orders.size(); ++i) orders[i] = contains(t, i) ? 1 : 0;
    out += dense_diffop<double>(orders, p) * q[t];
  }
  return out;
}

std::string sweep_row(const SweepConfig& cfg, std::size_t id) {
  const std::size_t r = cfg.r_min + id / cfg.per_r;
  Rng rng = Rng::for_instance(cfg.seed, id);
  const HermitianMatrix a =
      cfg.alpha > 0.0 ? random_psd_contraction(cfg.n, cfg.alpha, rng) : HermitianMatrix::zero(cfg.n);
  const double alpha = std::max(0.0, max_diagonal(a));
  const double eps_pave = 1.0 / static_cast<double>(r);
  const double simple = paving_simple_bound(eps_pave, alpha);
  const double gamma = paving_gamma(eps_pave, alpha);
  bool verified = true;
  if (std::sqrt(alpha) + std::sqrt(eps_pave) <= 1.0 && gamma > simple + 1e-12) verified = false;

  std::string mixed;
  const double limit = std::pow(1.0 - 1.0 / std::sqrt(static_cast<double>(r)), 2.0);
  if (cfg.eps > 0.0 && cfg.eps <= limit) {
    const auto mb = mixed_char_bound(cfg.eps, static_cast<int>(r));
    mixed = format_double(mb.bound);
    if (mb.bound < mb.mss_power - 1e-12) verified = false;
  }

  std::string truth;
  if (std::pow(static_cast<double>(r), static_cast<double>(cfg.n)) <= 1048576.0) {
    const double best = paving_search(a, r).lambda_max;
    truth = format_double(best);
    if (best > std::min(simple, 1.0) + 1e-8) verified = false;
  }

  std::ostringstream row;
  row << id << ',' << cfg.n << ',' << r << ',' << format_double(alpha) << ',' << format_double(cfg.eps) << ','
      << format_double(simple) << ',' << format_double(gamma) << ',' << mixed << ',' << truth << ','
      << (verified ? "true" : "false") << '\n';
  return row.str();
}

}  // namespace

std::size_t pool_size() {
  if (const char* env = std::getenv("STABLE_CALC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string sweep_header() {
  return "instance_id,n,r,alpha,eps,bound_simple,bound_gamma,bound_mixed,true_root,verified\n";
}

void run_sweep(const SweepConfig& cfg, std::ostream& out) {
  if (cfg.r_min < 1 || cfg.r_max < cfg.r_min) throw InputError("sweep: need 1 <= r_min <= r_max");
  if (cfg.n < 1 || cfg.n > 20) throw InputError("sweep: n must lie in 1..20");
  if (cfg.per_r < 1) throw InputError("sweep: need at least one instance per r");
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) throw InputError("sweep: alpha must lie in [0, 1)");
  if (!(cfg.eps >= 0.0 && cfg.eps <= 1.0)) throw InputError("sweep: eps must lie in [0, 1]");
  const std::size_t total = (cfg.r_max - cfg.r_min + 1) * cfg.per_r;
  std::vector<std::string> rows(total);
  std::vector<std::string> errors(total);
  const std::size_t workers = std::min(total, cfg.threads ? cfg.threads : pool_size());
  std::size_t next = 0;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      std::size_t id;
      {
        std::lock_guard lock(mu);
        if (next == total) return;
        id = next++;
      }
      try {
        rows[id] = sweep_row(cfg, id);
      } catch (const std::exception& e) {
        errors[id] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (std::size_t id = 0; id < total; ++id) {
    if (!errors[id].empty()) throw InputError("sweep instance " + std::to_string(id) + ": " + errors[id]);
  }
  out << sweep_header();
  for (const auto& r : rows) out << r;
}

int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiaffine real stable polynomial calculus and root bounds", "stablecalc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string out_path;
  bool exact = false;

  std::string file_a;
  std::string file_b;
  auto* conv = app.add_subcommand("conv", "Convolve two multiaffine polynomials p*q");
  conv->add_option("p", file_a, "JSON polynomial p")->required();
  conv->add_option("q", file_b, "JSON polynomial q")->required();
  conv->add_flag("--exact", exact, "Exact rational arithmetic (at most 12 variables)");
  conv->add_option("--out", out_path, "Write the result to FILE");

  auto* apply = app.add_subcommand("apply", "Apply the differential operator q(d) to p");
  apply->add_option("q", file_a, "JSON multiaffine operator polynomial q")->required();
  apply->add_option("p", file_b, "JSON polynomial p (any degree)")->required();
  apply->add_flag("--exact", exact, "Exact rational arithmetic (multiaffine p, at most 12 variables)");
  apply->add_option("--out", out_path, "Write the result to FILE");

  std::vector<double> pa;
  std::vector<double> pb;
  std::size_t k_opt = 0;
  auto* als = app.add_subcommand("als-bound", "Analytical Lieb-Sokal certificate for q(d)p");
  als->add_option("p", file_a, "JSON polynomial p")->required();
  als->add_option("q", file_b, "JSON multiaffine polynomial q")->required();
  als->add_option("--a", pa, "Point above the roots of p, comma separated")->delimiter(',')->required();
  als->add_option("--b", pb, "Point above the roots of flip(q), comma separated")->delimiter(',')->required();
  als->add_option("--k", k_opt, "Polarization degree (default: largest degree of p)");
  als->add_option("--out", out_path, "Write the certificate to FILE");

  std::string measure_spec;
  std::string matrix_path;
  auto* expchar = app.add_subcommand("expchar", "Expected characteristic polynomial under a measure");
  expchar->add_option("--measure", measure_spec, "Measure JSON text or file")->required();
  expchar->add_option("--matrix", matrix_path, "Hermitian matrix (JSON or CSV)")->required();
  expchar->add_option("--out", out_path, "Write the result to FILE");

  std::size_t r = 2;
  bool equal = false;
  auto* pave = app.add_subcommand("pave", "Paving bounds and exhaustive paving search");
  pave->add_option("--matrix", matrix_path, "PSD contraction (JSON or CSV)")->required();
  pave->add_option("--r", r, "Number of blocks")->check(CLI::PositiveNumber);
  pave->add_flag("--equal", equal, "Require blocks of equal size");
  pave->add_option("--out", out_path, "Write the report to FILE");

  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> r_mixed;
  auto* mixed = app.add_subcommand("mixed", "Mixed characteristic polynomial and its root bounds");
  mixed->add_option("decomposition", file_a, "JSON {\"matrices\": [...], \"resolution\": bool}");
  mixed->add_option("--matrix", matrix_path, "Same as the positional decomposition file");
  mixed->add_option("--n", n, "Dimension of a random rank-one resolution");
  mixed->add_option("--m", m, "Number of terms of the random resolution (default n)");
  mixed->add_option("--seed", seed, "Seed of the random resolution");
  mixed->add_option("--r", r_mixed, "Power r for the mixed-discriminant bound");
  mixed->add_option("--out", out_path, "Write the result to FILE");

  std::size_t samples = 50;
  auto* verify = app.add_subcommand("verify", "Run the randomized oracle suites");
  verify->add_option("--n", n, "Largest number of variables (default 6)");
  verify->add_option("--seed", seed, "Seed");
  verify->add_option("--samples", samples, "Instances per suite");

  SweepConfig sc;
  auto* sweep = app.add_subcommand(
      "sweep",
      "Bound-versus-truth CSV over random PSD contractions. Each contraction is V diag(u) V* with V Haar "
      "unitary and u uniform in [0,1], scaled so its largest diagonal entry is at most --alpha.");
  sweep->add_option("--n", sc.n, "Matrix dimension");
  sweep->add_option("--r", sc.r_max, "Largest block count");
  sweep->add_option("--r-min", sc.r_min, "Smallest block count");
  sweep->add_option("--alpha", sc.alpha, "Diagonal bound of the random contractions");
  sweep->add_option("--eps", sc.eps, "Trace bound for the mixed-discriminant column");
  sweep->add_option("--count", sc.per_r, "Instances per r");
  sweep->add_option("--seed", sc.seed, "Seed");
  sweep->add_option("--out", out_path, "Write the CSV to FILE");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (conv->parsed() || apply->parsed()) {
      const Json ja = load_json_file(file_a);
      const Json jb = load_json_file(file_b);
      if (exact) {
        const auto a = exact_multiaffine_from_json(ja);
        const auto b = exact_multiaffine_from_json(jb);
        if (a.n_vars() != b.n_vars()) throw InputError("polynomials have different numbers of variables");
        emit_json(to_json(conv->parsed() ? convolve(a, b) : apply_diffop(a, b)), out_path, out);
      } else if (conv->parsed()) {
        const auto a = multiaffine_from_json(ja);
        const auto b = multiaffine_from_json(jb);
        if (a.n_vars() != b.n_vars()) throw InputError("polynomials have different numbers of variables");
        emit_json(to_json(convolve(a, b)), out_path, out);
      } else {
        const auto q = multiaffine_from_json(ja);
        const auto p = dense_from_json(jb);
        if (q.n_vars() != p.n_vars()) throw InputError("polynomials have different numbers of variables");
        if (has_high_degree(p)) {
          emit_json(to_json(apply_to_dense(q, p)), out_path, out);
        } else {
          emit_json(to_json(apply_diffop(q, to_multiaffine(p))), out_path, out);
        }
      }
      return kExitOk;
    }

    if (als->parsed()) {
      const auto p = dense_from_json(load_json_file(file_a));
      const auto q = multiaffine_from_json(load_json_file(file_b));
      BoundCertificate cert;
      int kmax = 1;
      for (std::size_t i = 0; i < p.n_vars(); ++i) kmax = std::max(kmax, p.degree(i));
      const std::size_t k = k_opt ? k_opt : static_cast<std::size_t>(kmax);
      if (k == 1) {
        cert = als_bound(to_multiaffine(p), q, pa, pb);
      } else {
        cert = als_bound_polarized(p, q, pa, pb, k);
      }
      emit_json(to_json(cert), out_path, out);
      if (!cert.verified) throw VerificationFailure("certificate point failed the above-roots check");
      return kExitOk;
    }

    if (expchar->parsed()) {
      const SRMeasure mu = load_measure(measure_spec);
      const HermitianMatrix a = load_matrix_file(matrix_path);
      if (a.n() != mu.n()) {
        throw InputError("measure has " + std::to_string(mu.n()) + " items but the matrix has size " +
                         std::to_string(a.n()));
      }
      const UniPoly e = expected_charpoly(mu, a);
      Json j = {{"expected_charpoly", uni_report(e)}, {"homogeneous", is_homogeneous(mu)}};
      bool ok = true;
      if (mu.n() <= 12) {
        const double diff = max_rel_diff(e, expected_charpoly_oracle(mu, a));
        j["oracle_rel_diff"] = diff;
        ok = diff <= 1e-8;
      }
      emit_json(j, out_path, out);
      if (!ok) throw VerificationFailure("formula disagrees with the enumeration oracle");
      return kExitOk;
    }

    if (pave->parsed()) {
      const HermitianMatrix a = load_matrix_file(matrix_path);
      const PavingBoundReport rep = paving_certificate(a, r, equal);
      emit_json(to_json(rep), out_path, out);
      if (rep.best_found && rep.best_found->lambda_max > std::min(rep.simple_bound, 1.0) + 1e-8) {
        throw VerificationFailure("best paving exceeds the analytic bound");
      }
      return kExitOk;
    }

    if (mixed->parsed()) {
      PSDDecomposition dec;
      const std::string path = !file_a.empty() ? file_a : matrix_path;
      if (!path.empty()) {
        dec = decomposition_from_json(load_json_file(path));
      } else {
        if (n == 0) throw InputError("mixed: give a decomposition file or --n for a random resolution");
        Rng rng(seed);
        dec = random_rank1_resolution(n, m ? m : n, rng).dec;
      }
      double eps = 0.0;
      for (const auto& a : dec.matrices) eps = std::max(eps, a.mat().trace().real());
      const UniPoly mu = mixed_char_poly(dec);
      const double single = (1.0 + std::sqrt(eps)) * (1.0 + std::sqrt(eps));
      Json j = {{"mixed_charpoly", uni_report(mu)}, {"eps", eps}, {"mss_bound", single}};
      const double limit = r_mixed ? std::pow(1.0 - 1.0 / std::sqrt(static_cast<double>(*r_mixed)), 2.0) : 0.0;
      if (r_mixed && !(eps > 0.0 && eps <= limit)) {
        j["mixed_bound"] = nullptr;
        j["mixed_bound_note"] = "eps outside (0, (1-1/sqrt(r))^2]";
      } else if (r_mixed) {
        const auto mb = mixed_char_bound(eps, static_cast<int>(*r_mixed));
        j["mixed_bound"] = {{"bound", mb.bound},   {"optimum", mb.optimum},     {"a_star", mb.a_star},
                            {"b_star", mb.b_star}, {"mss_power", mb.mss_power}, {"mss_single", mb.mss_single}};
      }
      emit_json(j, out_path, out);
      if (dec.resolution && mu.degree() >= 1 && uni_max_root(mu) > single + 1e-8) {
        throw VerificationFailure("largest root exceeds (1+sqrt(eps))^2");
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      VerifyConfig vc;
      vc.max_n = n ? n : 6;
      vc.seed = seed;
      vc.samples = samples;
      bool all = true;
      for (const auto& res : run_verification(vc)) {
        out << (res.passed() ? "PASS " : "FAIL ") << res.name << " (" << res.checked << " checks)";
        if (!res.passed()) out << ": " << res.detail;
        out << "\n";
        all = all && res.passed();
      }
      return all ? kExitOk : kExitVerify;
    }

    if (sweep->parsed()) {
      std::ostringstream csv;
      run_sweep(sc, csv);
      emit(csv.str(), out_path, out);
      return kExitOk;
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace stablecalc::cli
