#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilates/core.hpp"

namespace dilates {

inline constexpr int kCertificateVersion = 1;

struct CertCongruence {
  std::vector<std::int64_t> lhs;  // witness elements
  std::vector<std::int64_t> rhs;
  std::int64_t shift = 0;         // rhs = lhs + shift
  friend bool operator==(const CertCongruence&, const CertCongruence&) = default;
};

/// Self-contained proof that <e, x> <= num/den for every admissible x.
/// Atoms and C are deliberately absent: the verifier rebuilds them.
struct Certificate {
  int version = kCertificateVersion;
  std::string mode = "integer";       // "integer" | "modular"
  std::optional<std::int64_t> modulus;
  std::vector<std::int64_t> coeffs;
  std::int64_t d = 0;
  std::vector<std::int64_t> witness;
  std::int64_t objective = 0;
  std::vector<CertCongruence> congruences;
  std::vector<Rational> dual;
  BigInt bound_num = 0;
  BigInt bound_den = 1;
  std::string note;

  Rational bound() const { return Rational(bound_num, bound_den); }
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// JSON schema v1. Dual entries are decimal strings ("-7" or "3/2").

inline nlohmann::ordered_json to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["version"] = c.version;
  j["mode"] = c.mode;
  if (c.modulus) j["modulus"] = *c.modulus;
  j["coeffs"] = c.coeffs;
  j["d"] = c.d;
  j["witness"] = c.witness;
  j["objective"] = c.objective;
  auto& cs = j["congruences"] = nlohmann::ordered_json::array();
  for (const auto& g : c.congruences) {
    nlohmann::ordered_json e;
    e["lhs"] = g.lhs;
    e["rhs"] = g.rhs;
    e["shift"] = g.shift;
    cs.push_back(std::move(e));
  }
  auto& dual = j["dual"] = nlohmann::ordered_json::array();
  for (const auto& y : c.dual) dual.push_back(y.is_integer() ? y.num().get_str() : y.str());
  // Bounds beyond 64 bits fall back to strings; parse accepts both.
  auto as_json = [](const BigInt& v) -> nlohmann::ordered_json {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
  };
  j["bound"] = {{"num", as_json(c.bound_num)}, {"den", as_json(c.bound_den)}};
  j["note"] = c.note;
  return j;
}

inline std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

namespace detail {

using Json = nlohmann::ordered_json;

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "/" + key + ": missing field");
  return *it;
}

inline std::int64_t int_field(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline BigInt big_field(const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return big_int(v.get<std::int64_t>());
    if (v.is_string()) return parse_big_int(v.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected an integer or decimal string");
}

inline std::vector<std::int64_t> int_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(int_field(v[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace detail

/// Parses schema v1; errors carry a JSON-pointer style location.
inline Certificate parse_certificate(const std::string& text) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  Certificate c;
  c.version = static_cast<int>(detail::int_field(detail::field(j, "version", ""), "/version"));
  if (c.version != kCertificateVersion) {
    throw ParseError("/version: unsupported certificate version " + std::to_string(c.version));
  }
  const auto& mode = detail::field(j, "mode", "");
  if (!mode.is_string()) throw ParseError("/mode: expected a string");
  c.mode = mode.get<std::string>();
  if (c.mode != "integer" && c.mode != "modular") throw ParseError("/mode: must be \"integer\" or \"modular\"");
  if (c.mode == "modular") c.modulus = detail::int_field(detail::field(j, "modulus", ""), "/modulus");
  c.coeffs = detail::int_list(detail::field(j, "coeffs", ""), "/coeffs");
  c.d = detail::int_field(detail::field(j, "d", ""), "/d");
  c.witness = detail::int_list(detail::field(j, "witness", ""), "/witness");
  c.objective = detail::int_field(detail::field(j, "objective", ""), "/objective");

  const auto& congs = detail::field(j, "congruences", "");
  if (!congs.is_array()) throw ParseError("/congruences: expected an array");
  for (std::size_t i = 0; i < congs.size(); ++i) {
    const std::string where = "/congruences/" + std::to_string(i);
    CertCongruence g;
    g.lhs = detail::int_list(detail::field(congs[i], "lhs", where), where + "/lhs");
    g.rhs = detail::int_list(detail::field(congs[i], "rhs", where), where + "/rhs");
    g.shift = detail::int_field(detail::field(congs[i], "shift", where), where + "/shift");
    c.congruences.push_back(std::move(g));
  }

  const auto& dual = detail::field(j, "dual", "");
  if (!dual.is_array()) throw ParseError("/dual: expected an array");
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const std::string where = "/dual/" + std::to_string(i);
    if (!dual[i].is_string()) throw ParseError(where + ": expected a decimal string");
    try {
      c.dual.push_back(Rational::parse(dual[i].get<std::string>()));
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  const auto& bound = detail::field(j, "bound", "");
  c.bound_num = detail::big_field(detail::field(bound, "num", "/bound"), "/bound/num");
  c.bound_den = detail::big_field(detail::field(bound, "den", "/bound"), "/bound/den");
  if (auto it = j.find("note"); it != j.end()) {
    if (!it->is_string()) throw ParseError("/note: expected a string");
    c.note = it->get<std::string>();
  }
  return c;
}

}  // namespace dilates
