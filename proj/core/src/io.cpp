#include "stablecalc/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace stablecalc {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::size_t as_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

double as_double(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    try {
      return Rational(s).get_d();
    } catch (const std::invalid_argument&) {
      throw InputError(where + ": cannot parse number \"" + s + "\"");
    }
  }
  throw InputError(where + ": expected a number");
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  if (j.is_string()) {
    try {
      Rational r(j.get<std::string>());
      r.canonicalize();
      if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
      return r;
    } catch (const std::invalid_argument&) {
      throw InputError(where + ": cannot parse rational \"" + j.get<std::string>() + "\"");
    }
  }
  throw InputError(where + ": expected a number or \"p/q\" string");
}

// Exponent vector of one term, from "subset" or "exponents".
std::vector<int> term_exponents(const Json& t, std::size_t n, const std::string& where) {
  std::vector<int> e(n, 0);
  if (t.contains("subset")) {
    const Json& s = t.at("subset");
    if (!s.is_array()) throw InputError(where + ".subset: expected an array");
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::size_t i = as_count(s[k], where + ".subset[" + std::to_string(k) + "]");
      if (i >= n) throw InputError(where + ".subset: index " + std::to_string(i) + " outside 0.." + std::to_string(n));
      if (e[i] != 0) throw InputError(where + ".subset: repeated index " + std::to_string(i));
      e[i] = 1;
    }
  } else if (t.contains("exponents")) {
    const Json& s = t.at("exponents");
    if (!s.is_array() || s.size() != n) {
      throw InputError(where + ".exponents: expected an array of length " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      e[k] = static_cast<int>(as_count(s[k], where + ".exponents[" + std::to_string(k) + "]"));
    }
  } else {
    throw InputError(where + ": term needs \"subset\" or \"exponents\"");
  }
  return e;
}

template <class F>
std::size_t for_each_term(const Json& j, F&& f) {
  const std::size_t n = as_count(require(j, "n_vars", "polynomial"), "polynomial.n_vars");
  const Json& terms = require(j, "terms", "polynomial");
  if (!terms.is_array()) throw InputError("polynomial.terms: expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "polynomial.terms[" + std::to_string(k) + "]";
    const Json& t = terms[k];
    if (!t.is_object()) throw InputError(where + ": expected an object");
    f(term_exponents(t, n, where), require(t, "coeff", where), where);
  }
  return n;
}

Json subset_json(Subset s) {
  Json arr = Json::array();
  for (std::size_t i : subset_indices(s)) arr.push_back(i);
  return arr;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

std::vector<std::vector<double>> read_rows(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  std::vector<std::vector<double>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      rows[r].push_back(as_double(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    }
  }
  return rows;
}

Json double_or_string(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Json to_json(const MultiAffinePoly& p) {
  Json terms = Json::array();
  for (Subset s = 0; s < p.size(); ++s) {
    if (p[s] != 0.0) terms.push_back({{"subset", subset_json(s)}, {"coeff", p[s]}});
  }
  return {{"n_vars", p.n_vars()}, {"terms", terms}};
}

Json to_json(const ExactMultiAffinePoly& p) {
  Json terms = Json::array();
  for (Subset s = 0; s < p.size(); ++s) {
    if (!is_zero(p[s])) terms.push_back({{"subset", subset_json(s)}, {"coeff", rational_string(p[s])}});
  }
  return {{"n_vars", p.n_vars()}, {"terms", terms}};
}

Json to_json(const DensePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", c}});
  return {{"n_vars", p.n_vars()}, {"terms", terms}};
}

Json to_json(const UniPoly& p) {
  return {{"degree", p.degree()}, {"coeffs", std::vector<double>(p.coeffs().begin(), p.coeffs().end())}};
}

DensePoly dense_from_json(const Json& j) {
  std::vector<std::pair<std::vector<int>, double>> collected;
  const std::size_t n = for_each_term(j, [&](std::vector<int> e, const Json& c, const std::string& where) {
    collected.emplace_back(std::move(e), as_double(c, where + ".coeff"));
  });
  std::vector<int> cap(n, 0);
  for (const auto& [e, c] : collected) {
    for (std::size_t i = 0; i < n; ++i) cap[i] = std::max(cap[i], e[i]);
  }
  DensePoly p(n, {}, cap);
  try {
    for (const auto& [e, c] : collected) p.add_term(e, c);
  } catch (const std::invalid_argument& ex) {
    throw InputError(std::string("polynomial: ") + ex.what());
  }
  return p;
}

MultiAffinePoly multiaffine_from_json(const Json& j) {
  const DensePoly d = dense_from_json(j);
  try {
    if (d.n_vars() > MultiAffinePoly::kMaxVars) throw std::length_error("too many variables");
    return to_multiaffine(d);
  } catch (const std::exception& ex) {
    throw InputError(std::string("polynomial: ") + ex.what());
  }
}

ExactMultiAffinePoly exact_multiaffine_from_json(const Json& j) {
  const std::size_t n = as_count(require(j, "n_vars", "polynomial"), "polynomial.n_vars");
  if (n > ExactMultiAffinePoly::kMaxExactVars) {
    throw InputError("polynomial: exact mode supports at most " +
                     std::to_string(ExactMultiAffinePoly::kMaxExactVars) + " variables");
  }
  ExactMultiAffinePoly p(n);
  for_each_term(j, [&](const std::vector<int>& e, const Json& c, const std::string& where) {
    Subset s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 1) throw InputError(where + ": exponent above 1 in a multiaffine polynomial");
      if (e[i] == 1) s |= singleton(i);
    }
    p[s] += as_rational(c, where + ".coeff");
  });
  return p;
}

UniPoly uni_from_json(const Json& j) {
  const Json& c = require(j, "coeffs", "univariate polynomial");
  if (!c.is_array()) throw InputError("univariate polynomial.coeffs: expected an array");
  std::vector<double> v;
  for (std::size_t k = 0; k < c.size(); ++k) v.push_back(as_double(c[k], "coeffs[" + std::to_string(k) + "]"));
  try {
    return UniPoly(std::move(v));
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
}

Json to_json(const HermitianMatrix& a) {
  const std::size_t n = a.n();
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < n; ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (std::size_t c = 0; c < n; ++c) {
      rr.push_back(a(r, c).real());
      ri.push_back(a(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  Json out = {{"n", n}, {"re", re}};
  if (!a.is_real()) out["im"] = im;
  return out;
}

HermitianMatrix matrix_from_json(const Json& j) {
  const std::size_t n = as_count(require(j, "n", "matrix"), "matrix.n");
  const auto re = read_rows(require(j, "re", "matrix"), n, "matrix.re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = read_rows(j.at("im"), n, "matrix.im");
  const Eigen::Index k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(k, k);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {re[r][c], im.empty() ? 0.0 : im[r][c]};
    }
  }
  try {
    return HermitianMatrix(std::move(m));
  } catch (const std::invalid_argument& ex) {
    throw InputError(std::string("matrix: ") + ex.what());
  }
}

HermitianMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const char* begin = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      while (end && std::isspace(static_cast<unsigned char>(*end))) ++end;
      if (end == begin || (end && *end != '\0')) {
        throw InputError("line " + std::to_string(lineno) + ": cannot parse \"" + cell + "\" as a number");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw InputError("matrix CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(n));
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  try {
    return HermitianMatrix::from_real(m);
  } catch (const std::invalid_argument& ex) {
    throw InputError(std::string("matrix: ") + ex.what());
  }
}

std::string matrix_to_csv(const HermitianMatrix& a) {
  std::string out;
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t c = 0; c < a.n(); ++c) {
      if (c) out += ',';
      out += format_double(a(r, c).real());
    }
    out += '\n';
  }
  return out;
}

HermitianMatrix load_matrix_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') return matrix_from_json(parse_json_text(text, path));
  try {
    return matrix_from_csv(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json to_json(const PSDDecomposition& dec) {
  Json mats = Json::array();
  for (const auto& a : dec.matrices) mats.push_back(to_json(a));
  return {{"matrices", mats}, {"resolution", dec.resolution}};
}

PSDDecomposition decomposition_from_json(const Json& j) {
  const Json& mats = require(j, "matrices", "decomposition");
  if (!mats.is_array() || mats.empty()) throw InputError("decomposition.matrices: expected a nonempty array");
  PSDDecomposition dec;
  for (const auto& m : mats) dec.matrices.push_back(matrix_from_json(m));
  dec.resolution = j.value("resolution", false);
  try {
    validate_decomposition(dec);
  } catch (const std::invalid_argument& ex) {
    throw InputError(std::string("decomposition: ") + ex.what());
  }
  return dec;
}

SRMeasure measure_from_json(const Json& j) {
  const Json& kind_j = require(j, "kind", "measure");
  if (!kind_j.is_string()) throw InputError("measure.kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "partition") {
      return partition_measure(as_count(require(j, "n", "measure"), "measure.n"),
                               as_count(require(j, "r", "measure"), "measure.r"));
    }
    if (kind == "equal_partition") {
      return equal_size_partition_measure(as_count(require(j, "m", "measure"), "measure.m"),
                                          as_count(require(j, "r", "measure"), "measure.r"));
    }
    if (kind == "product") {
      const Json& p = require(j, "p", "measure");
      if (!p.is_array()) throw InputError("measure.p: expected an array");
      std::vector<double> v;
      for (std::size_t k = 0; k < p.size(); ++k) v.push_back(as_double(p[k], "measure.p[" + std::to_string(k) + "]"));
      return product_measure(v);
    }
    if (kind == "determinantal") return determinantal_measure(matrix_from_json(require(j, "kernel", "measure")));
    if (kind == "explicit") {
      if (j.contains("coeffs")) {
        const std::size_t n = as_count(require(j, "n_vars", "measure"), "measure.n_vars");
        const Json& c = j.at("coeffs");
        if (!c.is_array()) throw InputError("measure.coeffs: expected an array");
        std::vector<double> v;
        for (std::size_t k = 0; k < c.size(); ++k) {
          v.push_back(as_double(c[k], "measure.coeffs[" + std::to_string(k) + "]"));
        }
        return SRMeasure(MultiAffinePoly(n, std::move(v)), j.value("label", std::string("explicit")));
      }
      return SRMeasure(multiaffine_from_json(j), j.value("label", std::string("explicit")));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& ex) {
    throw InputError("measure: " + std::string(ex.what()));
  }
  throw InputError("measure.kind: unknown kind \"" + kind + "\"");
}

Json to_json(const SRMeasure& mu) {
  return {{"kind", "explicit"},
          {"label", mu.label()},
          {"n_vars", mu.n()},
          {"coeffs", std::vector<double>(mu.gen().coeffs().begin(), mu.gen().coeffs().end())}};
}

Json to_json(const BoundCertificate& cert) {
  Json c = Json::array();
  for (double v : cert.c) c.push_back(double_or_string(v));
  return {{"c", c},
          {"a", cert.a},
          {"b", cert.b},
          {"phis", cert.phis},
          {"target_digest", fnv1a_hex(to_json(cert.target).dump())},
          {"verified", cert.verified}};
}

Json to_json(const Paving& p) {
  return {{"assignment", p.assignment}, {"r", p.r}, {"lambda_max", p.lambda_max}};
}

Json to_json(const PavingBoundReport& rep) {
  Json out = {{"n", rep.n},
              {"r", rep.r},
              {"alpha", rep.alpha},
              {"simple_bound", rep.simple_bound},
              {"simple_trivial", rep.simple_trivial},
              {"gamma_bound", rep.gamma_bound},
              {"within_proviso", rep.within_proviso}};
  out["best_found"] = rep.best_found ? to_json(*rep.best_found) : Json(nullptr);
  out["expected_root"] = rep.expected_root ? Json(*rep.expected_root) : Json(nullptr);
  return out;
}

}  // namespace stablecalc
