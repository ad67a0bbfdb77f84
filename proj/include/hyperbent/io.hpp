#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "hyperbent/boolfun.hpp"
#include "hyperbent/families.hpp"

namespace hyperbent {

inline std::string element_hex(std::uint32_t idx) { return gf2::to_hex(idx); }

inline std::uint32_t parse_element_hex(const std::string& s, const FieldSpec& f) {
  const std::uint64_t v = gf2::parse_hex(s);
  if (v >= f.size()) raise(errc::parse_error, "element " + s + " out of range for the field");
  return static_cast<std::uint32_t>(v);
}

// Truth tables as hex strings, little-endian over the canonical enumeration:
// the first hex digit packs table bits 0..3 (bit 0 least significant).
inline std::string table_to_hex(const TruthTable& t) {
  static const char* digits = "0123456789abcdef";
  std::string out(t.bits.size() / 4, '0');
  for (std::size_t j = 0; j < out.size(); ++j) {
    const int v = t.bits[4 * j] | t.bits[4 * j + 1] << 1 | t.bits[4 * j + 2] << 2 |
                  t.bits[4 * j + 3] << 3;
    out[j] = digits[v];
  }
  return out;
}

inline TruthTable table_from_hex(int n, const std::string& hex) {
  const std::size_t want = (std::size_t{1} << n) / 4;
  if (hex.size() != want)
    raise(errc::parse_error, "truth table hex must have " + std::to_string(want) + " digits");
  TruthTable t{n, std::vector<std::uint8_t>(std::size_t{1} << n)};
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const char c = hex[j];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else raise(errc::parse_error, "bad hex digit in truth table");
    for (int k = 0; k < 4; ++k) t.bits[4 * j + k] = static_cast<std::uint8_t>(v >> k & 1);
  }
  return t;
}

inline std::string spectrum_to_csv(const WalshSpectrum& s) {
  std::string out = "omega,value\n";
  for (std::size_t w = 0; w < s.values.size(); ++w)
    out += std::to_string(w) + "," + std::to_string(s.values[w]) + "\n";
  return out;
}

inline nlohmann::json family_to_json(const DillonFamilySpec& s) {
  nlohmann::json j;
  j["m"] = s.tower->m();
  j["field"] = gf2::to_hex(s.tower->big().modulus());
  j["small_field"] = gf2::to_hex(s.tower->small().modulus());
  j["terms"] = nlohmann::json::array();
  for (const FamilyTerm& t : s.terms)
    j["terms"].push_back({{"r", t.r}, {"a", element_hex(t.a)}});
  if (s.b) j["b"] = element_hex(*s.b);
  j["u0"] = element_hex(s.u0);
  return j;
}

// A parsed family owns the tower its spec points into.
struct ParsedFamily {
  std::unique_ptr<Tower> tower;
  DillonFamilySpec spec;
};

inline ParsedFamily family_from_json(const nlohmann::json& j) {
  try {
    const int m = j.at("m").get<int>();
    std::optional<std::uint32_t> big_mod, small_mod;
    if (j.contains("field"))
      big_mod = static_cast<std::uint32_t>(gf2::parse_hex(j.at("field").get<std::string>()));
    if (j.contains("small_field"))
      small_mod =
          static_cast<std::uint32_t>(gf2::parse_hex(j.at("small_field").get<std::string>()));
    auto tower = std::make_unique<Tower>(m, small_mod, big_mod);
    std::vector<FamilyTerm> terms;
    for (const auto& t : j.at("terms"))
      terms.push_back({t.at("r").get<std::uint32_t>(),
                       parse_element_hex(t.at("a").get<std::string>(), tower->big())});
    std::optional<std::uint32_t> b, u0;
    if (j.contains("b")) b = parse_element_hex(j.at("b").get<std::string>(), tower->big());
    if (j.contains("u0")) u0 = parse_element_hex(j.at("u0").get<std::string>(), tower->big());
    DillonFamilySpec spec = make_family(*tower, std::move(terms), b, u0);
    return {std::move(tower), std::move(spec)};
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("bad family spec: ") + e.what());
  }
}

inline ParsedFamily family_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(errc::parse_error, "bad family spec: not valid JSON");
  return family_from_json(j);
}

// FNV-1a over the canonical JSON form; identifies a spec across reports.
inline std::string spec_hash(const DillonFamilySpec& s) {
  const std::string text = family_to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return gf2::to_hex(h);
}

}  // namespace hyperbent
