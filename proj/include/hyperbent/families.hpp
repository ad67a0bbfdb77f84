#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperbent/boolfun.hpp"
#include "hyperbent/field.hpp"
#include "hyperbent/intmath.hpp"

namespace hyperbent {

inline std::vector<std::uint32_t> coset_leaders(std::uint32_t modulus) {
  return cyclotomic_coset_leaders(modulus);
}

// Dickson polynomial of the first kind over a binary field, evaluated by the
// recurrence D_0 = 0, D_1 = X, D_{i+2} = X D_{i+1} + D_i. The recurrence is
// already characteristic-2 native, unlike the closed binomial form.
inline std::uint32_t dickson(const FieldSpec& f, std::uint64_t r, std::uint32_t x) {
  if (r == 0) return 0;
  std::uint32_t prev = 0, cur = x;
  for (std::uint64_t i = 2; i <= r; ++i) {
    const std::uint32_t next = f.add(f.mul(x, cur), prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

inline FieldElement dickson(std::uint64_t r, const FieldElement& x) {
  return {dickson(*x.field, r, x.bits), x.field};
}

// D_r as a polynomial over GF(2), bit i = coefficient of X^i. r <= 63.
inline std::uint64_t dickson_polynomial(unsigned r) {
  if (r > 63) raise(errc::degree_out_of_range, "dickson_polynomial supports r <= 63");
  if (r == 0) return 0;
  std::uint64_t prev = 0, cur = 2;  // X
  for (unsigned i = 2; i <= r; ++i) {
    const std::uint64_t next = (cur << 1) ^ prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

struct FamilyTerm {
  std::uint32_t r = 0;  // cyclotomic coset leader mod 2^m + 1
  std::uint32_t a = 0;  // coefficient in GF(2^{2m})
};

// A trace form sum_r Tr^n_1(a_r x^{r(2^m-1)}) with an optional extra term
// Tr^2_1(b x^{(2^n-1)/3}), b in the embedded F_4, plus the chosen u0 used to
// decompose extension-field coefficients. Validated by make_family.
struct DillonFamilySpec {
  const Tower* tower = nullptr;
  std::vector<FamilyTerm> terms;
  std::optional<std::uint32_t> b;
  std::uint32_t u0 = 0;

  bool has_b() const { return b.has_value() && *b != 0; }
};

inline DillonFamilySpec make_family(const Tower& t, std::vector<FamilyTerm> terms,
                                    std::optional<std::uint32_t> b = std::nullopt,
                                    std::optional<std::uint32_t> u0 = std::nullopt) {
  const std::uint32_t umod = (std::uint32_t{1} << t.m()) + 1;
  const std::vector<std::uint32_t> leaders = coset_leaders(umod);
  for (const FamilyTerm& term : terms) {
    if (term.r == 0 || term.r >= umod)
      raise(errc::invalid_spec, "term exponent r must satisfy 1 <= r <= 2^m");
    if (!std::binary_search(leaders.begin(), leaders.end(), term.r))
      raise(errc::invalid_spec, "term exponent r must be a coset leader mod 2^m + 1");
    if (term.a >= t.big().size()) raise(errc::invalid_spec, "coefficient index out of range");
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (terms[i].r == terms[j].r) raise(errc::invalid_spec, "duplicate term exponent");
  if (b) {
    if (*b >= t.big().size() || !t.in_f4(*b))
      raise(errc::invalid_spec, "b must lie in the embedded F_4");
  }
  std::uint32_t u = u0.value_or(t.xi());
  if (u == 1 || t.big().pow(u, umod) != 1)
    raise(errc::invalid_spec, "u0 must lie in U_{2^m+1} \\ {1}");
  return DillonFamilySpec{&t, std::move(terms), b, u};
}

// The decomposition a_r = a' + a'' u0^r with both components in GF(2^m),
// returned pulled down to the small field.
struct CoefficientSplit {
  std::uint32_t a_prime = 0;
  std::uint32_t a_dprime = 0;
};

inline CoefficientSplit split_coefficient(const Tower& t, std::uint32_t a, std::uint32_t u0,
                                          std::uint32_t r) {
  const FieldSpec& B = t.big();
  const std::uint32_t umod = (std::uint32_t{1} << t.m()) + 1;
  if (u0 == 1 || B.pow(u0, umod) != 1) raise(errc::invalid_spec, "u0 must lie in U_{2^m+1} \\ {1}");
  const std::uint32_t ur = B.pow(u0, r);
  if (ur == 1) raise(errc::degenerate_u0, "u0^r = 1: the split basis collapses");
  const std::uint32_t urinv = B.inv(ur);
  const std::uint32_t denom_inv = B.inv(B.add(ur, urinv));  // u0^r + u0^{-r} != 0 since u0^{2r} != 1
  const std::uint32_t aq = B.frobenius_conjugate(a);
  const std::uint32_t ap = B.mul(B.add(B.mul(a, urinv), B.mul(aq, ur)), denom_inv);
  const std::uint32_t app = B.mul(B.add(a, aq), denom_inv);
  if (B.add(ap, B.mul(app, ur)) != a)
    raise(errc::internal_check_failed, "coefficient split does not reconstruct a_r");
  return {t.down(ap), t.down(app)};
}

inline int eval_family(const DillonFamilySpec& s, std::uint32_t x) {
  const FieldSpec& B = s.tower->big();
  const std::int64_t dillon = (std::int64_t{1} << s.tower->m()) - 1;
  int bit = 0;
  for (const FamilyTerm& t : s.terms)
    bit ^= B.trace_bit(B.mul(t.a, B.pow(x, static_cast<std::int64_t>(t.r) * dillon)));
  if (s.b) bit ^= s.tower->tr2_bit(B.mul(*s.b, B.pow(x, B.order() / 3)));
  return bit;
}

inline TruthTable family_table(const DillonFamilySpec& s) {
  return evaluate_to_table(s.tower->big(), [&](std::uint32_t x) { return eval_family(s, x); });
}

// K_m(a) = sum over GF(2^m) of (-1)^{Tr(1/x + ax)}, with 1/0 = 0. Always a
// multiple of 4 in these fields.
inline std::int64_t kloosterman(const FieldSpec& f, std::uint32_t a) {
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    s += f.trace_bit(f.add(f.inv(x), f.mul(a, x))) ? -1 : 1;
  return s;
}

}  // namespace hyperbent
