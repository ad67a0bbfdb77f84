#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include "hyperbent/errors.hpp"

namespace hyperbent::gf2 {

// Polynomials over GF(2) packed into a uint64_t: bit i holds the coefficient
// of X^i. Large enough for every modulus this library supports (degree <= 24)
// and for unreduced products of two such operands.

inline int degree(std::uint64_t p) { return static_cast<int>(std::bit_width(p)) - 1; }

// Carry-less product. Callers keep deg(a) + deg(b) < 64.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return mod(clmul(a, b), m);
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// A degree-k polynomial is reducible iff it has an irreducible factor of
// degree <= k/2, iff gcd(X^{2^i} + X, p) is nontrivial for some i <= k/2.
inline bool is_irreducible(std::uint64_t p) {
  const int d = degree(p);
  if (d < 1) return false;
  std::uint64_t t = 2;  // X
  for (int i = 1; i <= d / 2; ++i) {
    t = mulmod(t, t, p);
    if (gcd(t ^ 2u, p) != 1) return false;
  }
  return true;
}

// Smallest irreducible of the given degree in the integer order of the packed
// representation. Only odd candidates can be irreducible for k >= 1 (an even
// constant term means X divides).
inline std::uint64_t smallest_irreducible(int k) {
  const std::uint64_t top = std::uint64_t{1} << k;
  for (std::uint64_t c = 1; c < top; c += 2)
    if (is_irreducible(top | c)) return top | c;
  raise(errc::internal_check_failed, "no irreducible polynomial of degree " + std::to_string(k));
}

inline std::string to_hex(std::uint64_t p) {
  if (p == 0) return "0x0";
  char buf[19];
  int pos = 18;
  static const char* digits = "0123456789abcdef";
  while (p) {
    buf[--pos] = digits[p & 0xf];
    p >>= 4;
  }
  return "0x" + std::string(buf + pos, buf + 18);
}

inline std::uint64_t parse_hex(const std::string& s) {
  std::size_t start = 0;
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) start = 2;
  if (start >= s.size() || s.size() - start > 16) raise(errc::parse_error, "bad hex value: " + s);
  std::uint64_t v = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else raise(errc::parse_error, "bad hex value: " + s);
    v = v << 4 | static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace hyperbent::gf2
