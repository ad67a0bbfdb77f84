#pragma once

#include <cstdint>

#include "hyperbent/criteria.hpp"

namespace hyperbent {

// The affine curve y^2 + y D(x) = (c x^2 + a) D(x) over GF(2^m), D = x^2+x+1.
// m odd keeps D root-free.
struct CurveSpec {
  const FieldSpec* field = nullptr;
  std::uint32_t a = 0;
  std::uint32_t c = 0;
};

inline CurveSpec make_curve(const FieldSpec& f, std::uint32_t a, std::uint32_t c) {
  if (f.degree() % 2 == 0) raise(errc::bad_m, "the curve needs odd m");
  if (a >= f.size() || c >= f.size()) raise(errc::invalid_spec, "curve coefficients out of range");
  return {&f, a, c};
}

// sum over x of (-1)^{Tr((c x^2 + a)/(x^2 + x + 1))}.
inline std::int64_t curve_character_sum(const CurveSpec& curve) {
  const FieldSpec& S = *curve.field;
  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < S.size(); ++x) {
    const std::uint32_t den = S.add(S.add(S.sqr(x), x), 1);
    sum += S.trace_bit(S.mul(S.add(S.mul(curve.c, S.sqr(x)), curve.a), S.inv(den))) ? -1 : 1;
  }
  return sum;
}

// Number of affine points plus exactly one point at infinity. Per x the
// substitution y = t D(x) turns the fibre into t^2 + t = (c x^2 + a)/D(x),
// which has 2 solutions when the trace vanishes and none otherwise, so
// #C = 2T + 1 and #C - 1 - 2^m equals the character sum above.
inline std::int64_t count_points(const CurveSpec& curve) {
  const FieldSpec& S = *curve.field;
  std::int64_t zero_trace = 0;
  for (std::uint32_t x = 0; x < S.size(); ++x) {
    const std::uint32_t den = S.add(S.add(S.sqr(x), x), 1);
    zero_trace +=
        S.trace_bit(S.mul(S.add(S.mul(curve.c, S.sqr(x)), curve.a), S.inv(den))) == 0;
  }
  return 2 * zero_trace + 1;
}

// Point-count criterion for the b-free single-term family the curve encodes:
// #C = 2^m + 2 - (-1)^{Tr(c)}.
inline CriterionReport criterion_curve_count(const CurveSpec& curve) {
  const std::int64_t count = count_points(curve);
  const std::int64_t target = (std::int64_t{1} << curve.field->degree()) + 2 -
                              (curve.field->trace_bit(curve.c) ? -1 : 1);
  return {count == target, count, target, {}};
}

// General form with a b-term. The b-term shifts the count target twice over:
// f(1) picks up Tr^2_1(b), and the slice of GF(2^m) where the parametrized
// b-term equals 1 contributes twice its character sum. With b = 0 both
// corrections vanish and this reduces to the form above.
inline CriterionReport criterion_curve_count(const CurveSpec& curve, const Tower& t,
                                             std::uint32_t b_f4) {
  if (&t.small() != curve.field) raise(errc::invalid_spec, "curve and tower fields differ");
  const std::int64_t count = count_points(curve);
  int f1 = curve.field->trace_bit(curve.c);
  std::int64_t correction = 0;
  if (b_f4 != 0) {
    if (!t.in_f4(b_f4)) raise(errc::invalid_spec, "b must lie in the embedded F_4");
    const FieldSpec& B = t.big();
    const FieldSpec& S = t.small();
    f1 ^= t.tr2_bit(b_f4);
    const MobiusContext ctx = make_mobius_context(t, t.f4_generator());
    for (std::uint32_t x = 0; x < S.size(); ++x) {
      const std::uint32_t u = mobius_map(ctx, MobiusArg::at(x));
      if (t.tr2_bit(B.mul(b_f4, B.pow(u, B.order() / 3))) == 0) continue;
      const std::uint32_t den = S.add(S.add(S.sqr(x), x), 1);
      correction +=
          S.trace_bit(S.mul(S.add(S.mul(curve.c, S.sqr(x)), curve.a), S.inv(den))) ? -1 : 1;
    }
  }
  const std::int64_t target =
      (std::int64_t{1} << curve.field->degree()) + 2 - (f1 ? -1 : 1) + 2 * correction;
  return {count == target, count, target, {}};
}

}  // namespace hyperbent
