#pragma once

// JSON forms of classes, matrices and variety files. Arbitrary-precision
// values are decimal strings; structural counts (rank, genus, generator
// indices) are plain JSON integers.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "abelfourier/abelian_model.hpp"
#include "abelfourier/errors.hpp"
#include "abelfourier/exterior_algebra.hpp"
#include "json.hpp"

namespace abelfourier {

using json = nlohmann::ordered_json;

inline Int parse_int(const json& j, const std::string& where) {
  Int v;
  if (j.is_number_integer()) return Int(j.dump());
  if (!j.is_string() || v.set_str(j.get<std::string>(), 10) != 0)
    throw Error(ErrorCode::ParseError, where + ": expected a decimal integer");
  return v;
}

/// "p/q", "p" or an integer literal.
inline Rat parse_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (!j.is_string()) throw Error(ErrorCode::ParseError, where + ": expected a rational string \"p/q\"");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  Int num, den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0 ||
      (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0))
    throw Error(ErrorCode::ParseError, where + ": malformed rational \"" + s + "\"");
  if (den == 0) throw Error(ErrorCode::ParseError, where + ": zero denominator");
  return make_rat(num, den);
}

inline std::string rat_string(const Rat& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline json to_json(const Multivector& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) {
    json gens = json::array();
    for (unsigned i : mask_generators(m)) gens.push_back(i);
    terms.push_back(json{{"generators", gens}, {"coeff", c.get_str()}});
  }
  return json{{"rank", x.rank()}, {"terms", terms}};
}

inline Multivector multivector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("terms"))
    throw Error(ErrorCode::ParseError, "class: expected {\"rank\", \"terms\"}");
  if (!j["rank"].is_number_unsigned()) throw Error(ErrorCode::ParseError, "class: rank must be a nonnegative integer");
  const auto rank = j["rank"].get<unsigned>();
  if (rank > kMaxRank) throw Error(ErrorCode::ParseError, "class: rank exceeds 64");
  Multivector x(rank);
  std::vector<Mask> seen;
  for (const auto& t : j["terms"]) {
    if (!t.contains("generators") || !t.contains("coeff") || !t["generators"].is_array())
      throw Error(ErrorCode::ParseError, "class: term needs generators and coeff");
    Mask m = 0;
    long prev = -1;
    for (const auto& g : t["generators"]) {
      if (!g.is_number_unsigned()) throw Error(ErrorCode::ParseError, "class: generator index must be an integer");
      const auto i = g.get<long>();
      if (i <= prev) throw Error(ErrorCode::ParseError, "class: generator list must be strictly increasing");
      if (i >= static_cast<long>(rank)) throw Error(ErrorCode::ParseError, "class: generator index out of range");
      m |= Mask(1) << i;
      prev = i;
    }
    if (std::find(seen.begin(), seen.end(), m) != seen.end())
      throw Error(ErrorCode::ParseError, "class: repeated monomial");
    seen.push_back(m);
    x.add_term(m, parse_int(t["coeff"], "class coefficient"));
  }
  return x;
}

inline json to_json(const IntMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const RatMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(rat_string(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::size_t check_square(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, where + ": expected a nonempty matrix");
  const std::size_t n = j.size();
  for (const auto& row : j)
    if (!row.is_array() || row.size() != n) throw Error(ErrorCode::ParseError, where + ": matrix must be square");
  return n;
}

}  // namespace detail

inline IntMatrix int_matrix_from_json(const json& j, const std::string& where) {
  const std::size_t n = detail::check_square(j, where);
  IntMatrix M(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) M(r, c) = parse_int(j[r][c], where);
  return M;
}

inline RatMatrix rat_matrix_from_json(const json& j, const std::string& where) {
  const std::size_t n = detail::check_square(j, where);
  RatMatrix M(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) M(r, c) = parse_rat(j[r][c], where);
  return M;
}

/// Variety file: name, genus, exactly one of polarization_type /
/// polarization_matrix, optional complex_structure. A polarization_type
/// yields the Frobenius normal form (factor-major 2x2 blocks).
inline AbelianVariety variety_from_json(const json& j, Conventions conventions = {}) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "variety: expected a JSON object");
  const std::string name = j.value("name", std::string("A"));
  if (!j.contains("genus") || !j["genus"].is_number_unsigned() || j["genus"].get<unsigned>() == 0)
    throw Error(ErrorCode::ParseError, "variety: genus must be a positive integer");
  const unsigned g = j["genus"].get<unsigned>();
  const bool has_type = j.contains("polarization_type"), has_matrix = j.contains("polarization_matrix");
  if (has_type == has_matrix)
    throw Error(ErrorCode::ParseError, "variety: give exactly one of polarization_type, polarization_matrix");
  IntMatrix E;
  if (has_type) {
    const auto& t = j["polarization_type"];
    if (!t.is_array() || t.size() != g) throw Error(ErrorCode::ParseError, "variety: polarization_type needs g entries");
    std::vector<Int> delta;
    for (const auto& d : t) delta.push_back(parse_int(d, "polarization_type"));
    for (std::size_t i = 0; i < delta.size(); ++i) {
      if (delta[i] <= 0) throw Error(ErrorCode::InvalidType, "type entries must be positive");
      if (i + 1 < delta.size() && !mpz_divisible_p(delta[i + 1].get_mpz_t(), delta[i].get_mpz_t()))
        throw Error(ErrorCode::InvalidType, delta[i].get_str() + " does not divide " + delta[i + 1].get_str());
    }
    E = IntMatrix(2 * g, 2 * g);
    for (unsigned i = 0; i < g; ++i) {
      E(2 * i, 2 * i + 1) = delta[i];
      E(2 * i + 1, 2 * i) = -delta[i];
    }
  } else {
    E = int_matrix_from_json(j["polarization_matrix"], "polarization_matrix");
    if (E.rows() != 2 * g) throw Error(ErrorCode::DimensionMismatch, "polarization_matrix must be 2g x 2g");
  }
  std::optional<RatMatrix> J;
  if (j.contains("complex_structure") && !j["complex_structure"].is_null()) {
    J = rat_matrix_from_json(j["complex_structure"], "complex_structure");
    if (J->rows() != 2 * g) throw Error(ErrorCode::DimensionMismatch, "complex_structure must be 2g x 2g");
  }
  return make_variety(E, J, name, conventions);
}

inline json to_json(const AbelianVariety& A) {
  json j{{"name", A.name}, {"genus", A.genus}, {"polarization_matrix", to_json(A.E)}};
  if (A.J) j["complex_structure"] = to_json(*A.J);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace abelfourier
