#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "hyperbent/field.hpp"
#include "hyperbent/intmath.hpp"

namespace hyperbent {

// A Boolean function on GF(2^n) as its 2^n-bit evaluation under the canonical
// element enumeration; index 0 is the field element 0.
struct TruthTable {
  int n = 0;
  std::vector<std::uint8_t> bits;
};

template <typename Fn>
TruthTable evaluate_to_table(const FieldSpec& field, Fn&& f) {
  TruthTable t{field.degree(), std::vector<std::uint8_t>(field.size())};
  for (std::uint32_t i = 0; i < field.size(); ++i)
    t.bits[i] = static_cast<std::uint8_t>(f(i) & 1);
  return t;
}

struct WalshSpectrum {
  std::vector<std::int32_t> values;  // indexed by omega
};

// Single coefficient, straight from the definition.
inline std::int64_t walsh(const TruthTable& f, const FieldSpec& field, std::uint32_t omega) {
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < field.size(); ++x)
    s += (f.bits[x] ^ field.trace_bit(field.mul(omega, x))) ? -1 : 1;
  return s;
}

// Full spectrum in O(n 2^n): a standard dot-product butterfly, then a linear
// reindexing that converts the dot product <w, x> into the trace form
// Tr(omega x).
inline WalshSpectrum walsh_spectrum(const TruthTable& f, const FieldSpec& field) {
  const std::uint32_t size = field.size();
  std::vector<std::int32_t> v(size);
  for (std::uint32_t i = 0; i < size; ++i) v[i] = f.bits[i] ? -1 : 1;
  for (std::uint32_t step = 1; step < size; step <<= 1) {
    for (std::uint32_t i = 0; i < size; ++i) {
      if (i & step) continue;
      const std::int32_t a = v[i], b = v[i | step];
      v[i] = a + b;
      v[i | step] = a - b;
    }
  }

  const int n = field.degree();
  std::vector<std::uint32_t> row(n, 0);  // row[i] = bits Tr(e_i e_j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      row[i] |= static_cast<std::uint32_t>(
                    field.trace_bit(field.mul(std::uint32_t{1} << i, std::uint32_t{1} << j)))
                << j;

  WalshSpectrum s;
  s.values.assign(size, 0);
  for (std::uint32_t omega = 0; omega < size; ++omega) {
    std::uint32_t w = 0, o = omega;
    while (o) {
      w ^= row[std::countr_zero(o)];
      o &= o - 1;
    }
    s.values[omega] = v[w];
  }
  return s;
}

inline std::int64_t extended_walsh(const TruthTable& f, const FieldSpec& field,
                                   std::uint32_t omega, std::uint64_t k) {
  if (std::gcd(k, static_cast<std::uint64_t>(field.order())) != 1)
    raise(errc::exponent_not_coprime, "exponent k must be coprime to 2^n - 1");
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < field.size(); ++x) {
    const std::uint32_t y = field.pow(x, static_cast<std::int64_t>(k));
    s += (f.bits[x] ^ field.trace_bit(field.mul(omega, y))) ? -1 : 1;
  }
  return s;
}

inline bool is_bent(const TruthTable& f, const FieldSpec& field) {
  if (field.degree() % 2) raise(errc::odd_n, "bentness is defined for even n only");
  const std::int32_t flat = std::int32_t{1} << (field.degree() / 2);
  for (const std::int32_t v : walsh_spectrum(f, field).values)
    if (v != flat && v != -flat) return false;
  return true;
}

struct HyperBentWitness {
  std::uint32_t omega = 0;
  std::uint64_t k = 0;
  std::int64_t value = 0;
};

// Definition oracle: every extended Walsh coefficient must be +-2^{n/2}, for
// every exponent k coprime to 2^n - 1. Exponents are reduced to one
// cyclotomic-coset leader per doubling orbit, which is enough because the
// k -> 2k spectrum is the k spectrum at sqrt(omega). Cost is roughly
// phi(2^n-1)/n spectra of size 2^n; callers cap n.
inline bool is_hyper_bent_def(const TruthTable& f, const FieldSpec& field,
                              HyperBentWitness* witness = nullptr) {
  if (field.degree() % 2) raise(errc::odd_n, "hyper-bentness is defined for even n only");
  const std::uint32_t order = field.order();
  const std::int32_t flat = std::int32_t{1} << (field.degree() / 2);
  for (const std::uint32_t k : cyclotomic_coset_leaders(order)) {
    if (std::gcd(k, order) != 1) continue;
    const std::int64_t kinv = *mod_inverse(k, order);
    TruthTable g{f.n, std::vector<std::uint8_t>(field.size())};
    g.bits[0] = f.bits[0];
    for (std::uint32_t y = 1; y < field.size(); ++y) g.bits[y] = f.bits[field.pow(y, kinv)];
    const WalshSpectrum s = walsh_spectrum(g, field);
    for (std::uint32_t omega = 0; omega < field.size(); ++omega) {
      if (s.values[omega] == flat || s.values[omega] == -flat) continue;
      if (witness) *witness = {omega, k, s.values[omega]};
      return false;
    }
  }
  return true;
}

// The weight form of the same test, for functions with f(alpha^{2^m+1} x) =
// f(x) and f(0) = 0 (checked): hyper-bent iff the restriction of f to the
// first 2^m + 1 powers of alpha has weight 2^{m-1}.
inline bool is_hyper_bent_restricted(const TruthTable& f, const FieldSpec& field,
                                     std::optional<std::uint32_t> alpha = std::nullopt) {
  if (field.degree() % 2) raise(errc::odd_n, "hyper-bentness is defined for even n only");
  const int m = field.degree() / 2;
  const std::uint32_t a = alpha.value_or(field.generator());
  if (f.bits[0]) raise(errc::hypothesis_violated, "f(0) must be 0");
  const std::uint32_t gamma = field.pow(a, (std::int64_t{1} << m) + 1);
  for (std::uint32_t x = 0; x < field.size(); ++x)
    if (f.bits[field.mul(gamma, x)] != f.bits[x])
      raise(errc::hypothesis_violated, "f is not invariant under multiplication by alpha^{2^m+1}");
  int wt = 0;
  std::uint32_t p = 1;
  for (std::uint32_t i = 0; i <= (std::uint32_t{1} << m); ++i) {
    wt += f.bits[p];
    p = field.mul(p, a);
  }
  return wt == 1 << (m - 1);
}

// Degree of the algebraic normal form via the binary Moebius transform over
// the n-cube; the zero function has degree -1.
inline int algebraic_degree(const TruthTable& f) {
  std::vector<std::uint8_t> a = f.bits;
  const std::uint32_t size = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t step = 1; step < size; step <<= 1)
    for (std::uint32_t i = 0; i < size; ++i)
      if (i & step) a[i] ^= a[i ^ step];
  int deg = -1;
  for (std::uint32_t i = 0; i < size; ++i)
    if (a[i]) deg = std::max(deg, static_cast<int>(std::popcount(i)));
  return deg;
}

}  // namespace hyperbent
