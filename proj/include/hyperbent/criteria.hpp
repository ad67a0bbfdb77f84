#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hyperbent/families.hpp"

namespace hyperbent {

struct CriterionReport {
  bool verdict = false;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::vector<std::string> witnesses;
};

// ---- Moebius parametrization of the unit subgroup -------------------------

struct MobiusContext {
  const Tower* tower = nullptr;
  std::uint32_t u0 = 0;          // in U_{2^m+1} \ {1}
  std::uint32_t rho0_small = 0;  // u0 / (1 + u0^2), pulled down to GF(2^m)
};

inline MobiusContext make_mobius_context(const Tower& t, std::uint32_t u0) {
  const FieldSpec& B = t.big();
  const std::uint32_t umod = (std::uint32_t{1} << t.m()) + 1;
  if (u0 == 1 || B.pow(u0, umod) != 1) raise(errc::invalid_spec, "u0 must lie in U_{2^m+1} \\ {1}");
  const std::uint32_t rho_big = B.mul(u0, B.inv(B.add(1, B.sqr(u0))));
  const std::uint32_t rho0 = t.down(rho_big);
  // x^2 + x + rho0 must have no root in GF(2^m), i.e. Tr(rho0) = 1. This
  // holds for every admissible u0; a failure means a misconfiguration.
  if (t.small().trace_bit(rho0) != 1)
    raise(errc::singular_denominator,
          "Tr(rho0) = 0 for u0 = " + gf2::to_hex(u0) + "; x^2 + x + rho0 has subfield roots");
  return {&t, u0, rho0};
}

// GF(2^m) together with the point at infinity; infinity is a dedicated value,
// never an in-band field element.
struct MobiusArg {
  bool infinite = false;
  std::uint32_t x = 0;
  static MobiusArg infinity() { return {true, 0}; }
  static MobiusArg at(std::uint32_t x) { return {false, x}; }
};

// ((u0+1)x + 1) / ((u0+1)x + u0), a bijection GF(2^m) u {inf} -> U_{2^m+1};
// infinity maps to 1. The denominator cannot vanish: its root u0/(u0+1) is
// not Frobenius-fixed for u0 != 1.
inline std::uint32_t mobius_map(const MobiusContext& c, MobiusArg arg) {
  if (arg.infinite) return 1;
  const FieldSpec& B = c.tower->big();
  const std::uint32_t s = B.mul(B.add(c.u0, 1), c.tower->up(arg.x));
  return B.mul(B.add(s, 1), B.inv(B.add(s, c.u0)));
}

// Returns (u + 1/u, u0 u + 1/(u0 u)) for u = mobius_map(x) and checks them
// against the closed forms 1/(x^2+x+rho0) and x^2/(rho0 (x^2+x+rho0)).
inline std::pair<std::uint32_t, std::uint32_t> mobius_identities(const MobiusContext& c,
                                                                 std::uint32_t x) {
  const FieldSpec& B = c.tower->big();
  const FieldSpec& S = c.tower->small();
  const std::uint32_t u = mobius_map(c, MobiusArg::at(x));
  const std::uint32_t lhs1 = B.add(u, B.inv(u));
  const std::uint32_t u0u = B.mul(c.u0, u);
  const std::uint32_t lhs2 = B.add(u0u, B.inv(u0u));
  const std::uint32_t d = S.add(S.add(S.sqr(x), x), c.rho0_small);
  if (d == 0) raise(errc::singular_denominator, "x^2 + x + rho0 vanished");
  const std::uint32_t rhs1 = c.tower->up(S.inv(d));
  const std::uint32_t rhs2 = c.tower->up(S.mul(S.sqr(x), S.inv(S.mul(c.rho0_small, d))));
  if (lhs1 != rhs1 || lhs2 != rhs2)
    raise(errc::internal_check_failed, "Moebius parametrization identities violated");
  return {lhs1, lhs2};
}

// ---- split coefficients and the composed g ---------------------------------

namespace detail {

struct SplitTerm {
  std::uint32_t r = 0;
  std::uint32_t a_prime = 0;   // GF(2^m)
  std::uint32_t a_dprime = 0;  // GF(2^m)
};

struct SplitFamily {
  const Tower* tower = nullptr;
  std::uint32_t u0 = 0;
  std::uint32_t rho0 = 0;  // GF(2^m)
  std::vector<SplitTerm> terms;
  std::uint32_t b = 0;  // embedded F_4; 0 when absent
};

inline SplitFamily split_family(const DillonFamilySpec& s) {
  const MobiusContext ctx = make_mobius_context(*s.tower, s.u0);
  SplitFamily out{s.tower, s.u0, ctx.rho0_small, {}, s.b.value_or(0)};
  out.terms.reserve(s.terms.size());
  for (const FamilyTerm& t : s.terms) {
    const CoefficientSplit cs = split_coefficient(*s.tower, t.a, s.u0, t.r);
    out.terms.push_back({t.r, cs.a_prime, cs.a_dprime});
  }
  return out;
}

// The two rational arguments fed to the Dickson polynomials, in GF(2^m).
inline std::pair<std::uint32_t, std::uint32_t> g_arguments(const SplitFamily& sf,
                                                           std::uint32_t x) {
  const FieldSpec& S = sf.tower->small();
  const std::uint32_t d = S.add(S.add(S.sqr(x), x), sf.rho0);
  if (d == 0) raise(errc::singular_denominator, "x^2 + x + rho0 vanished");
  return {S.inv(d), S.mul(S.sqr(x), S.inv(S.mul(sf.rho0, d)))};
}

// sum_r Tr(a'_r D_r(arg1) + a''_r D_r(arg2)): the coefficient part of g,
// evaluated entirely in the small field.
inline int g_core_bit(const SplitFamily& sf, std::uint32_t x) {
  const auto [a1, a2] = g_arguments(sf, x);
  const FieldSpec& S = sf.tower->small();
  int bit = 0;
  for (const SplitTerm& t : sf.terms)
    bit ^= S.trace_bit(
        S.add(S.mul(t.a_prime, dickson(S, t.r, a1)), S.mul(t.a_dprime, dickson(S, t.r, a2))));
  return bit;
}

// The b-term of the family evaluated at the unit u(x) that x parametrizes:
// Tr^2_1(b u(x)^{(2^n-1)/3}). On U this value is constant on the cosets of
// the cube subgroup V but not on all of U, so it has to ride through the
// parametrization; replacing it by the constant Tr^2_1(b) is valid only for
// b = 0.
inline int b_term_bit(const SplitFamily& sf, std::uint32_t x) {
  if (sf.b == 0) return 0;
  const FieldSpec& B = sf.tower->big();
  const MobiusContext ctx{sf.tower, sf.u0, sf.rho0};
  const std::uint32_t u = mobius_map(ctx, MobiusArg::at(x));
  return sf.tower->tr2_bit(B.mul(sf.b, B.pow(u, B.order() / 3)));
}

inline std::uint32_t require_b_free(const DillonFamilySpec& s, const char* who) {
  if (s.has_b()) raise(errc::invalid_spec, std::string(who) + " applies to b-free families only");
  return 0;
}

}  // namespace detail

// ---- exponential sums ------------------------------------------------------

// Character sum of f over the unit subgroup; equal to 1 exactly for the
// hyper-bent members of these families.
inline std::int64_t lambda_sum(const DillonFamilySpec& s) {
  std::int64_t sum = 0;
  for (const std::uint32_t u : s.tower->unit_group()) sum += eval_family(s, u) ? -1 : 1;
  return sum;
}

// The composed Boolean function on GF(2^m) whose character sum decides
// hyper-bentness: Dickson terms in the split coefficients plus the b-term
// carried through the parametrization.
inline int g_value(const DillonFamilySpec& s, std::uint32_t x) {
  const detail::SplitFamily sf = detail::split_family(s);
  return detail::g_core_bit(sf, x) ^ detail::b_term_bit(sf, x);
}

// sum over U \ {1} of the split-g characters at u + 1/u and u0 u + 1/(u0 u).
// Relates to the unit sum by lambda = chi(f(1)) + T1; the two agree with the
// classical lambda = 1 + T1 exactly when f(1) = 0 (always true for subfield
// coefficients).
inline std::int64_t t1_sum(const DillonFamilySpec& s) {
  detail::require_b_free(s, "t1_sum");
  const detail::SplitFamily sf = detail::split_family(s);
  const FieldSpec& B = s.tower->big();
  const FieldSpec& S = s.tower->small();
  std::int64_t sum = 0;
  for (const std::uint32_t u : s.tower->unit_group()) {
    if (u == 1) continue;
    const std::uint32_t c1 = s.tower->down(B.add(u, B.inv(u)));
    const std::uint32_t u0u = B.mul(s.u0, u);
    const std::uint32_t c2 = s.tower->down(B.add(u0u, B.inv(u0u)));
    int bit = 0;
    for (const detail::SplitTerm& t : sf.terms)
      bit ^= S.trace_bit(
          S.add(S.mul(t.a_prime, dickson(S, t.r, c1)), S.mul(t.a_dprime, dickson(S, t.r, c2))));
    sum += bit ? -1 : 1;
  }
  return sum;
}

// Partial sums S_i over the cosets xi^i V of the cube subgroup V of U.
// S_0 + S_1 + S_2 recomposes the unit sum.
inline std::array<std::int64_t, 3> partial_sums(const DillonFamilySpec& s) {
  detail::require_b_free(s, "partial_sums");
  if (s.tower->m() % 2 == 0) raise(errc::bad_m, "the cube decomposition of U needs odd m");
  std::array<std::int64_t, 3> sums{0, 0, 0};
  const std::vector<std::uint32_t>& units = s.tower->unit_group();
  for (std::size_t j = 0; j < units.size(); ++j)
    sums[j % 3] += eval_family(s, units[j]) ? -1 : 1;
  return sums;
}

// ---- criteria --------------------------------------------------------------

// Main criterion: sum over GF(2^m) of (-1)^{g(x)} equals 1 - (-1)^{f(1)}.
inline CriterionReport criterion_g_sum(const DillonFamilySpec& s) {
  const detail::SplitFamily sf = detail::split_family(s);
  std::int64_t lhs = 0;
  for (std::uint32_t x = 0; x < s.tower->small().size(); ++x)
    lhs += (detail::g_core_bit(sf, x) ^ detail::b_term_bit(sf, x)) ? -1 : 1;
  const std::int64_t rhs = 1 - (eval_family(s, 1) ? -1 : 1);
  return {lhs == rhs, lhs, rhs, {}};
}

// The b = 1 specialization of the main criterion.
inline CriterionReport criterion_g_sum_b1(const DillonFamilySpec& s) {
  if (!s.b || *s.b != 1)
    raise(errc::invalid_spec, "criterion_g_sum_b1 needs b = 1");
  return criterion_g_sum(s);
}

// Weight form of the criterion for b-free families: the composed g must have
// weight 2^{m-1} when f(1) = 0 (and one less when f(1) = 1, which can occur
// for extension-field coefficients).
inline CriterionReport criterion_g_weight(const DillonFamilySpec& s) {
  detail::require_b_free(s, "criterion_g_weight");
  const detail::SplitFamily sf = detail::split_family(s);
  std::int64_t wt = 0;
  for (std::uint32_t x = 0; x < s.tower->small().size(); ++x) wt += detail::g_core_bit(sf, x);
  const std::int64_t target =
      (std::int64_t{1} << (s.tower->m() - 1)) - (eval_family(s, 1) ? 1 : 0);
  return {wt == target, wt, target, {}};
}

// T1 = 0 form for b-free families; the target picks up the same f(1)
// correction as the weight form.
inline CriterionReport criterion_t1_zero(const DillonFamilySpec& s) {
  const std::int64_t t1 = t1_sum(s);
  const std::int64_t rhs = 1 - (eval_family(s, 1) ? -1 : 1);
  return {t1 == rhs, t1, rhs, {}};
}

// Weighted partial-sum criterion: sum_i chi(Tr^2_1(b g^i)) S_i = 1, where the
// S_i are the partial sums of the b-free part. The recomposition identity
// against the unit sum is checked before the verdict is trusted.
inline CriterionReport criterion_partial_sums(const DillonFamilySpec& s) {
  DillonFamilySpec bare = s;
  bare.b.reset();
  const std::array<std::int64_t, 3> sums = partial_sums(bare);
  const FieldSpec& B = s.tower->big();
  const std::uint32_t b = s.b.value_or(0);
  std::int64_t weighted = 0;
  for (int i = 0; i < 3; ++i) {
    const int w = b == 0 ? 0 : s.tower->tr2_bit(B.mul(b, B.pow(s.tower->f4_generator(), i)));
    weighted += w ? -sums[i] : sums[i];
  }
  if (weighted != lambda_sum(s))
    raise(errc::internal_check_failed, "partial-sum recomposition does not match the unit sum");
  return {weighted == 1, weighted, 1, {}};
}

// Subfield-coefficient criterion: with g(x) = sum_r Tr(a_r D_r(x)),
// sum_x (-1)^{Tr(1/x) + g(x)} = 2^m - 2 wt(g).
inline CriterionReport criterion_subfield_dickson_sum(const DillonFamilySpec& s) {
  detail::require_b_free(s, "criterion_subfield_dickson_sum");
  const FieldSpec& S = s.tower->small();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;  // (r, a) in GF(2^m)
  for (const FamilyTerm& t : s.terms) {
    if (!s.tower->in_subfield(t.a))
      raise(errc::coefficient_not_in_subfield, "all a_r must lie in GF(2^m)");
    terms.emplace_back(t.r, s.tower->down(t.a));
  }
  std::int64_t lhs = 0, wt = 0;
  for (std::uint32_t x = 0; x < S.size(); ++x) {
    int g = 0;
    for (const auto& [r, a] : terms) g ^= S.trace_bit(S.mul(a, dickson(S, r, x)));
    wt += g;
    lhs += (S.trace_bit(S.inv(x)) ^ g) ? -1 : 1;
  }
  const std::int64_t rhs = (std::int64_t{1} << s.tower->m()) - 2 * wt;
  return {lhs == rhs, lhs, rhs, {}};
}

// Both sides of the power-substitution identity for b-free families:
//   lhs = sum over U of chi(f(u^p))
//   rhs = 1 + sum over U \ {1} of chi(g_{a'}(D_p(u + 1/u)) +
//                                    g_{a''}(D_p(u0^{1/p} u + (u0^{1/p} u)^{-1})))
// The sides differ by chi(f(1)) - 1, so they are equal exactly when f(1) = 0.
inline std::pair<std::int64_t, std::int64_t> unit_power_identity(const DillonFamilySpec& s,
                                                                 std::uint32_t p) {
  detail::require_b_free(s, "unit_power_identity");
  const std::uint32_t umod = (std::uint32_t{1} << s.tower->m()) + 1;
  const auto pinv = mod_inverse(p, umod);
  if (!pinv) raise(errc::p_not_coprime, "p must be coprime to 2^m + 1");
  const detail::SplitFamily sf = detail::split_family(s);
  const FieldSpec& B = s.tower->big();
  const FieldSpec& S = s.tower->small();
  const std::uint32_t u0_root = B.pow(s.u0, *pinv);

  std::int64_t lhs = 0, rhs = 1;
  for (const std::uint32_t u : s.tower->unit_group()) {
    lhs += eval_family(s, B.pow(u, p)) ? -1 : 1;
    if (u == 1) continue;
    const std::uint32_t c1 = dickson(S, p, s.tower->down(B.add(u, B.inv(u))));
    const std::uint32_t z = B.mul(u0_root, u);
    const std::uint32_t c2 = dickson(S, p, s.tower->down(B.add(z, B.inv(z))));
    int bit = 0;
    for (const detail::SplitTerm& t : sf.terms)
      bit ^= S.trace_bit(
          S.add(S.mul(t.a_prime, dickson(S, t.r, c1)), S.mul(t.a_dprime, dickson(S, t.r, c2))));
    rhs += bit ? -1 : 1;
  }
  return {lhs, rhs};
}

// Single-term family with an F_4-valued u0: the composed g collapses to
// Tr((c x^2 + a) / (x^2 + x + 1)). Inputs a, b, c are GF(2^m) indices; the
// b-term enters through Tr^n_2(b) in {0, 1} and rides through the
// parametrization like every other b-term.
inline CriterionReport criterion_fraction_sum(const Tower& t, std::uint32_t a, std::uint32_t b,
                                              std::uint32_t c) {
  if (t.m() % 2 == 0) raise(errc::bad_m, "this family needs odd m");
  const FieldSpec& B = t.big();
  const FieldSpec& S = t.small();
  if (a >= S.size() || b >= S.size() || c >= S.size())
    raise(errc::invalid_spec, "a, b, c must be GF(2^m) indices");

  const std::uint32_t u0 = t.f4_generator();
  const std::uint32_t a1 = B.add(t.up(a), B.mul(t.up(c), u0));
  std::uint32_t b4 = 0, tpow = t.up(b);  // Tr^n_2(b) = b + b^4 + ... in {0, 1}
  for (int i = 0; i < t.m(); ++i) {
    b4 = B.add(b4, tpow);
    tpow = B.pow(tpow, 4);
  }
  if (b4 > 1) raise(errc::internal_check_failed, "Tr^n_2 of a subfield element must be 0 or 1");
  const DillonFamilySpec spec = make_family(t, {{1, a1}}, b4, u0);

  const detail::SplitFamily sf = detail::split_family(spec);
  std::int64_t lhs = 0;
  for (std::uint32_t x = 0; x < S.size(); ++x) {
    // displayed simplification, straight in the small field
    const std::uint32_t den = S.add(S.add(S.sqr(x), x), 1);
    const int frac = S.trace_bit(S.mul(S.add(S.mul(c, S.sqr(x)), a), S.inv(den)));
    if (frac != detail::g_core_bit(sf, x))
      raise(errc::internal_check_failed, "composed g does not match its displayed simplification");
    lhs += (frac ^ detail::b_term_bit(sf, x)) ? -1 : 1;
  }
  const std::int64_t rhs = 1 - (S.trace_bit(c) ? -1 : 1);
  return {lhs == rhs, lhs, rhs, {}};
}

}  // namespace hyperbent
