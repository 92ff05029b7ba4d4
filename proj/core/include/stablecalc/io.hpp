#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "stablecalc/dense_poly.hpp"
#include "stablecalc/lieb_sokal.hpp"
#include "stablecalc/matrix_polys.hpp"
#include "stablecalc/multiaffine.hpp"
#include "stablecalc/paving.hpp"
#include "stablecalc/rayleigh.hpp"
#include "stablecalc/uni_poly.hpp"

namespace stablecalc {

using Json = nlohmann::json;

/// Malformed or inconsistent input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors become InputError naming line and column.
Json parse_json_text(const std::string& text, const std::string& source = "<input>");
/// Reads and parses a JSON file.
Json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// "%.17g" formatting.
std::string format_double(double v);

/// 64-bit FNV-1a hash rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

// Polynomials: {"n_vars": n, "terms": [{"subset": [...]} or {"exponents": [...]}, "coeff": c]}.
// Indices are 0-based. Coefficients are numbers, or "p/q" strings in exact mode.
Json to_json(const MultiAffinePoly& p);
Json to_json(const ExactMultiAffinePoly& p);
Json to_json(const DensePoly& p);
/// {"degree": d, "coeffs": [c0, c1, ...]} ascending.
Json to_json(const UniPoly& p);

DensePoly dense_from_json(const Json& j);
MultiAffinePoly multiaffine_from_json(const Json& j);
ExactMultiAffinePoly exact_multiaffine_from_json(const Json& j);
UniPoly uni_from_json(const Json& j);

// Matrices: {"n": n, "re": [[...]], "im": [[...]]} ("im" optional), or CSV of real parts.
Json to_json(const HermitianMatrix& a);
HermitianMatrix matrix_from_json(const Json& j);
HermitianMatrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const HermitianMatrix& a);
/// JSON or CSV chosen by the first non-blank character.
HermitianMatrix load_matrix_file(const std::string& path);

/// {"matrices": [...], "resolution": bool}.
Json to_json(const PSDDecomposition& dec);
PSDDecomposition decomposition_from_json(const Json& j);

/// {"kind": "partition", "n", "r"} | {"kind": "equal_partition", "m", "r"} |
/// {"kind": "product", "p": [...]} | {"kind": "determinantal", "kernel": matrix} |
/// {"kind": "explicit", "n_vars", "coeffs": [...]} or with "terms".
SRMeasure measure_from_json(const Json& j);
Json to_json(const SRMeasure& mu);

/// {c, a, b, phis, target_digest, verified}; -infinity is written as "-inf".
Json to_json(const BoundCertificate& cert);
Json to_json(const Paving& p);
Json to_json(const PavingBoundReport& rep);

}  // namespace stablecalc
