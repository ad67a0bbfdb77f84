#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperbent/errors.hpp"
#include "hyperbent/gf2poly.hpp"

namespace hyperbent {

class FieldSpec;

// A field value as its polynomial-basis coefficient vector, bound to the
// field it lives in. Element index i <-> the element whose basis coefficients
// are the bits of i; this enumeration is canonical everywhere (truth tables,
// serialization, reports).
struct FieldElement {
  std::uint32_t bits = 0;
  const FieldSpec* field = nullptr;
};

// GF(2^k), 2 <= k <= 24, over a validated irreducible modulus. Multiplication
// is carry-less multiply + reduction; fields of degree <= 16 also carry
// discrete-log tables built at construction, which makes mul/inv/pow O(1) in
// the exhaustive scans that dominate this library's runtime. Immutable after
// construction and safe to share across threads.
class FieldSpec {
public:
  static constexpr int min_degree = 2;
  static constexpr int max_degree = 24;
  static constexpr int table_degree_limit = 16;

  explicit FieldSpec(int degree, std::optional<std::uint32_t> modulus = std::nullopt)
      : degree_(degree) {
    if (degree < min_degree || degree > max_degree)
      raise(errc::degree_out_of_range,
            "field degree must be in [" + std::to_string(min_degree) + ", " +
                std::to_string(max_degree) + "], got " + std::to_string(degree));
    if (modulus) {
      if (gf2::degree(*modulus) != degree)
        raise(errc::degree_out_of_range,
              "modulus " + gf2::to_hex(*modulus) + " does not have degree " + std::to_string(degree));
      if (!gf2::is_irreducible(*modulus))
        raise(errc::not_irreducible, "modulus " + gf2::to_hex(*modulus) + " is reducible over GF(2)");
      modulus_ = *modulus;
    } else {
      modulus_ = static_cast<std::uint32_t>(gf2::smallest_irreducible(degree));
    }
    order_ = (std::uint32_t{1} << degree) - 1;

    std::uint32_t n = order_;
    for (std::uint32_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      order_prime_factors_.push_back(p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) order_prime_factors_.push_back(n);

    // Absolute trace of each basis monomial, packed into a parity mask:
    // Tr(x) = popcount(x & trace_mask) mod 2 by GF(2)-linearity.
    for (int j = 0; j < degree; ++j)
      if (trace_slow(std::uint32_t{1} << j)) trace_mask_ |= std::uint32_t{1} << j;

    generator_ = find_generator();
    if (degree <= table_degree_limit) build_tables();
  }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  int degree() const { return degree_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return order_; }            // 2^k - 1
  std::uint32_t size() const { return order_ + 1; }         // 2^k
  std::uint32_t generator() const { return generator_; }    // smallest primitive index
  std::uint32_t trace_mask() const { return trace_mask_; }

  FieldElement element(std::uint32_t idx) const {
    if (idx >= size()) raise(errc::parse_error, "element index out of range");
    return {idx, this};
  }
  FieldElement zero() const { return {0, this}; }
  FieldElement one() const { return {1, this}; }
  FieldElement primitive_element() const { return {generator_, this}; }

  // ---- index-level arithmetic ------------------------------------------

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return mul_slow(a, b);
  }

  std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }

  // inv(0) = 0: the 1/0 = 0 convention used throughout.
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) return 0;
    if (!log_.empty()) return exp_[order_ - log_[a]];
    return pow(a, static_cast<std::int64_t>(order_) - 1);
  }

  // Any integer exponent; reduced mod 2^k - 1 for a nonzero base.
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
    if (a == 0) return e == 0 ? 1u : 0u;
    std::int64_t r = e % order_;
    if (r < 0) r += order_;
    if (!log_.empty())
      return exp_[static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r) % order_];
    std::uint32_t base = a, acc = 1;
    while (r) {
      if (r & 1) acc = mul_slow(acc, base);
      base = mul_slow(base, base);
      r >>= 1;
    }
    return acc;
  }

  // Squaring is bijective in characteristic 2; the square root is x^{2^{k-1}}.
  std::uint32_t sqrt(std::uint32_t a) const {
    for (int i = 1; i < degree_; ++i) a = sqr(a);
    return a;
  }

  int trace_bit(std::uint32_t a) const {
    return static_cast<int>(std::popcount(a & trace_mask_) & 1u);
  }

  // Relative trace onto the degree-sub_degree subfield:
  // x + x^{2^s} + ... + x^{2^{k-s}}. The result y satisfies y^{2^s} = y.
  std::uint32_t trace(std::uint32_t a, int sub_degree) const {
    if (sub_degree <= 0 || degree_ % sub_degree != 0)
      raise(errc::not_a_divisor,
            std::to_string(sub_degree) + " does not divide the field degree " + std::to_string(degree_));
    std::uint32_t acc = a, t = a;
    for (int i = sub_degree; i < degree_; i += sub_degree) {
      for (int s = 0; s < sub_degree; ++s) t = sqr(t);
      acc ^= t;
    }
    return acc;
  }

  // x -> x^{2^m} for even degree n = 2m. An involution whose fixed points are
  // exactly the degree-m subfield.
  std::uint32_t frobenius_conjugate(std::uint32_t a) const {
    if (degree_ % 2) raise(errc::odd_degree, "frobenius conjugate needs an even field degree");
    for (int i = 0; i < degree_ / 2; ++i) a = sqr(a);
    return a;
  }

private:
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(gf2::mod(gf2::clmul(a, b), modulus_));
  }

  int trace_slow(std::uint32_t a) const {
    std::uint32_t acc = a, t = a;
    for (int i = 1; i < degree_; ++i) {
      t = mul_slow(t, t);
      acc ^= t;
    }
    return static_cast<int>(acc & 1u);
  }

  std::uint32_t find_generator() const {
    for (std::uint32_t g = 2; g <= order_; ++g) {
      bool primitive = true;
      for (std::uint32_t p : order_prime_factors_) {
        if (pow(g, order_ / p) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) return g;
    }
    raise(errc::internal_check_failed, "no primitive element found; modulus is not irreducible");
  }

  void build_tables() {
    exp_.assign(2 * static_cast<std::size_t>(order_), 1);
    log_.assign(size(), 0);
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < order_; ++i) {
      exp_[i] = v;
      exp_[i + order_] = v;
      log_[v] = i;
      v = mul_slow(v, generator_);
    }
    if (v != 1) raise(errc::internal_check_failed, "generator order mismatch while building tables");
  }

  int degree_;
  std::uint32_t modulus_ = 0;
  std::uint32_t order_ = 0;
  std::uint32_t generator_ = 0;
  std::uint32_t trace_mask_ = 0;
  std::vector<std::uint32_t> order_prime_factors_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

inline FieldSpec make_field(int degree, std::optional<std::uint32_t> modulus = std::nullopt) {
  return FieldSpec(degree, modulus);
}

// ---- element-level arithmetic -------------------------------------------

inline void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field == nullptr || a.field != b.field)
    raise(errc::field_mismatch, "operands belong to different fields");
}

inline bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field == b.field && a.bits == b.bits;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return {a.bits ^ b.bits, a.field};
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return {a.field->mul(a.bits, b.bits), a.field};
}

inline FieldElement inv(const FieldElement& a) { return {a.field->inv(a.bits), a.field}; }

inline FieldElement pow(const FieldElement& a, std::int64_t e) {
  return {a.field->pow(a.bits, e), a.field};
}

inline FieldElement sqrt(const FieldElement& a) { return {a.field->sqrt(a.bits), a.field}; }

inline FieldElement trace(const FieldElement& a, int sub_degree) {
  return {a.field->trace(a.bits, sub_degree), a.field};
}

inline int trace_bit(const FieldElement& a) { return a.field->trace_bit(a.bits); }

inline FieldElement frobenius_conjugate(const FieldElement& a) {
  return {a.field->frobenius_conjugate(a.bits), a.field};
}

// All 2^m + 1 solutions of u^{2^m + 1} = 1 inside GF(2^{2m}), listed as powers
// of xi = alpha^{2^m - 1} starting from xi^0 = 1.
inline std::vector<FieldElement> unit_subgroup(const FieldSpec& f) {
  if (f.degree() % 2) raise(errc::odd_degree, "the unit subgroup needs an even field degree");
  const int m = f.degree() / 2;
  const std::uint32_t xi = f.pow(f.generator(), (std::int64_t{1} << m) - 1);
  std::vector<FieldElement> us;
  us.reserve((std::size_t{1} << m) + 1);
  std::uint32_t u = 1;
  for (std::uint32_t i = 0; i <= (std::uint32_t{1} << m); ++i) {
    us.push_back({u, &f});
    u = f.mul(u, xi);
  }
  return us;
}

// The unique copy of the small field inside the big one. The small generator
// g maps to beta = alpha^{N t} (N = (2^n-1)/(2^m-1)) for the smallest t that
// makes beta a root of g's minimal polynomial; the map g^j -> beta^j, 0 -> 0
// is then the field embedding, tabulated in both directions.
class SubfieldEmbedding {
public:
  SubfieldEmbedding(const FieldSpec& small, const FieldSpec& big) : small_(&small), big_(&big) {
    if (big.degree() % small.degree() != 0)
      raise(errc::not_a_divisor, "subfield degree must divide the extension degree");

    const std::uint32_t minpoly = generator_min_poly(small);
    const std::int64_t n_quot = static_cast<std::int64_t>(big.order() / small.order());
    std::uint32_t beta = 0;
    smallest_t_ = 0;
    for (std::uint32_t t = 1; t <= small.order(); ++t) {
      const std::uint32_t cand = big.pow(big.generator(), n_quot * t);
      if (eval_gf2_poly(big, minpoly, cand) == 0) {
        beta = cand;
        smallest_t_ = t;
        break;
      }
    }
    if (smallest_t_ == 0)
      raise(errc::internal_check_failed, "no embedding root found for the subfield generator");

    to_big_.assign(small.size(), 0);
    to_big_[1] = 1;
    std::uint32_t e = 1, be = 1;
    for (std::uint32_t j = 1; j < small.order(); ++j) {
      e = small.mul(e, small.generator());
      be = big.mul(be, beta);
      to_big_[e] = be;
    }
    for (std::uint32_t i = 0; i < small.size(); ++i) to_small_.emplace(to_big_[i], i);

    // cheap sanity: additivity on basis pairs (full additivity is exercised
    // in the test suite)
    for (int i = 0; i < small.degree(); ++i)
      for (int j = 0; j < i; ++j) {
        const std::uint32_t x = std::uint32_t{1} << i, y = std::uint32_t{1} << j;
        if (to_big_[x ^ y] != (to_big_[x] ^ to_big_[y]))
          raise(errc::internal_check_failed, "embedding is not additive");
      }
  }

  const FieldSpec& small() const { return *small_; }
  const FieldSpec& big() const { return *big_; }
  std::uint32_t generator_image_exponent() const { return smallest_t_; }

  std::uint32_t up(std::uint32_t a) const { return to_big_[a]; }

  std::optional<std::uint32_t> down(std::uint32_t a) const {
    const auto it = to_small_.find(a);
    if (it == to_small_.end()) return std::nullopt;
    return it->second;
  }

private:
  // Minimal polynomial of the small field's primitive element over GF(2),
  // found as the linear dependency of 1, g, ..., g^m.
  static std::uint32_t generator_min_poly(const FieldSpec& f) {
    const int m = f.degree();
    std::array<std::uint32_t, 32> vecs{};
    std::array<std::uint32_t, 32> combos{};
    std::uint32_t p = 1;
    for (int i = 0; i < m; ++i) {
      std::uint32_t val = p, combo = std::uint32_t{1} << i;
      for (int b = 31; b >= 0; --b) {
        if (!(val >> b & 1)) continue;
        if (vecs[b]) {
          val ^= vecs[b];
          combo ^= combos[b];
        } else {
          vecs[b] = val;
          combos[b] = combo;
          val = 0;
          break;
        }
      }
      if (val != 0) raise(errc::internal_check_failed, "generator powers are linearly dependent");
      p = f.mul(p, f.generator());
    }
    std::uint32_t val = p, combo = 0;  // express g^m in the power basis
    for (int b = 31; b >= 0; --b) {
      if (!(val >> b & 1)) continue;
      if (!vecs[b]) raise(errc::internal_check_failed, "generator power basis is incomplete");
      val ^= vecs[b];
      combo ^= combos[b];
    }
    return (std::uint32_t{1} << m) | combo;
  }

  static std::uint32_t eval_gf2_poly(const FieldSpec& f, std::uint32_t poly, std::uint32_t x) {
    std::uint32_t acc = 0;
    for (int i = gf2::degree(poly); i >= 0; --i) acc = f.mul(acc, x) ^ (poly >> i & 1u);
    return acc;
  }

  const FieldSpec* small_;
  const FieldSpec* big_;
  std::uint32_t smallest_t_ = 0;
  std::vector<std::uint32_t> to_big_;
  std::unordered_map<std::uint32_t, std::uint32_t> to_small_;
};

// The working pair GF(2^m) inside GF(2^{2m}), with the embedding, the unit
// subgroup U_{2^m+1} and its canonical generator xi, and the embedded F_4.
// The extension is built directly over GF(2) (not as a tower over the small
// field); the subfield lives inside it as the fixed field of x -> x^{2^m}.
class Tower {
public:
  explicit Tower(int m, std::optional<std::uint32_t> small_modulus = std::nullopt,
                 std::optional<std::uint32_t> big_modulus = std::nullopt)
      : m_(m), small_(m, small_modulus), big_(2 * m, big_modulus), emb_(small_, big_) {
    xi_ = big_.pow(big_.generator(), (std::int64_t{1} << m) - 1);
    f4_g_ = big_.pow(big_.generator(), big_.order() / 3);  // 3 | 2^{2m} - 1 always
    units_.reserve((std::size_t{1} << m) + 1);
    std::uint32_t u = 1;
    for (std::uint32_t i = 0; i <= (std::uint32_t{1} << m); ++i) {
      units_.push_back(u);
      u = big_.mul(u, xi_);
    }
  }

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  int m() const { return m_; }
  const FieldSpec& small() const { return small_; }
  const FieldSpec& big() const { return big_; }
  const SubfieldEmbedding& embedding() const { return emb_; }
  std::uint32_t xi() const { return xi_; }
  std::uint32_t f4_generator() const { return f4_g_; }
  const std::vector<std::uint32_t>& unit_group() const { return units_; }

  std::uint32_t up(std::uint32_t a) const { return emb_.up(a); }

  std::uint32_t down(std::uint32_t a) const {
    const auto d = emb_.down(a);
    if (!d) raise(errc::coefficient_not_in_subfield, "value is not fixed by x -> x^{2^m}");
    return *d;
  }

  bool in_subfield(std::uint32_t a) const { return big_.frobenius_conjugate(a) == a; }

  // Tr from the embedded F_4 down to GF(2): y + y^2, which is 0 or 1 exactly
  // when y^4 = y.
  int tr2_bit(std::uint32_t y) const {
    const std::uint32_t t = big_.add(y, big_.sqr(y));
    if (t > 1) raise(errc::invalid_spec, "value does not lie in the embedded F_4");
    return static_cast<int>(t);
  }

  bool in_f4(std::uint32_t y) const { return big_.pow(y, 4) == y; }

  // Index i of the class xi^i V containing u, where V is the subgroup of
  // cubes of U. Defined only when 3 | 2^m + 1, i.e. m odd.
  int unit_cube_class(std::uint32_t u) const {
    if (m_ % 2 == 0) raise(errc::bad_m, "the cube decomposition of U needs odd m");
    const std::uint32_t w = big_.pow(u, big_.order() / 3);
    if (w == 1) return 0;
    if (w == f4_g_) return 1;
    if (w == big_.sqr(f4_g_)) return 2;
    raise(errc::invalid_spec, "element is not in the unit subgroup");
  }

private:
  int m_;
  FieldSpec small_;
  FieldSpec big_;
  SubfieldEmbedding emb_;
  std::uint32_t xi_ = 0;
  std::uint32_t f4_g_ = 0;
  std::vector<std::uint32_t> units_;
};

}  // namespace hyperbent
