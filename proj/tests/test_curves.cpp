#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "hyperbent/curves.hpp"

using namespace hyperbent;
using hyperbent::testing::throws_code;

namespace {

// Brute-force oracle: count affine solutions of y^2 + y D(x) = (c x^2 + a) D(x)
// by scanning all (x, y) pairs.
std::int64_t affine_points_by_scan(const FieldSpec& f, std::uint32_t a, std::uint32_t c) {
  std::int64_t count = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const std::uint32_t d = f.add(f.add(f.sqr(x), x), 1);
    const std::uint32_t rhs = f.mul(f.add(f.mul(c, f.sqr(x)), a), d);
    for (std::uint32_t y = 0; y < f.size(); ++y)
      if (f.add(f.sqr(y), f.mul(y, d)) == rhs) ++count;
  }
  return count;
}

// Affine points of t^2 + t = (c x^2 + a)/D(x), the pre-substitution curve.
std::int64_t fibre_points_by_scan(const FieldSpec& f, std::uint32_t a, std::uint32_t c) {
  std::int64_t count = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const std::uint32_t d = f.add(f.add(f.sqr(x), x), 1);
    const std::uint32_t rhs = f.mul(f.add(f.mul(c, f.sqr(x)), a), f.inv(d));
    for (std::uint32_t t = 0; t < f.size(); ++t)
      if (f.add(f.sqr(t), t) == rhs) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("point counting") {
  FieldSpec f8(3), f32(5), f128(7);

  SECTION("zero coefficients give the full double cover") {
    CHECK(count_points(make_curve(f8, 0, 0)) == 17);
    CHECK(count_points(make_curve(f32, 0, 0)) == 65);
    CHECK(count_points(make_curve(f128, 0, 0)) == 257);
  }

  SECTION("count is odd and matches the brute-force scan") {
    for (std::uint32_t a = 0; a < f8.size(); ++a)
      for (std::uint32_t c = 0; c < f8.size(); ++c) {
        const CurveSpec curve = make_curve(f8, a, c);
        const std::int64_t n = count_points(curve);
        REQUIRE(n % 2 == 1);
        REQUIRE(n == affine_points_by_scan(f8, a, c) + 1);
      }
    for (std::uint32_t a = 3; a < f32.size(); a += 11)
      for (std::uint32_t c = 1; c < f32.size(); c += 7)
        REQUIRE(count_points(make_curve(f32, a, c)) == affine_points_by_scan(f32, a, c) + 1);
  }

  SECTION("the substitution y = t D(x) is a bijection on affine points") {
    for (std::uint32_t a = 0; a < f8.size(); ++a)
      for (std::uint32_t c = 0; c < f8.size(); ++c)
        REQUIRE(affine_points_by_scan(f8, a, c) == fibre_points_by_scan(f8, a, c));
    for (std::uint32_t a = 1; a < f32.size(); a += 13)
      for (std::uint32_t c = 2; c < f32.size(); c += 9)
        REQUIRE(affine_points_by_scan(f32, a, c) == fibre_points_by_scan(f32, a, c));
  }

  SECTION("count minus 1 minus 2^m equals the character sum") {
    for (std::uint32_t a = 0; a < f8.size(); ++a)
      for (std::uint32_t c = 0; c < f8.size(); ++c) {
        const CurveSpec curve = make_curve(f8, a, c);
        REQUIRE(count_points(curve) - 1 - 8 == curve_character_sum(curve));
      }
  }

  SECTION("even m is rejected") {
    FieldSpec f16(4);
    CHECK(throws_code([&] { make_curve(f16, 1, 1); }, errc::bad_m));
  }
}

TEST_CASE("curve criterion") {
  Tower t(3);
  const FieldSpec& S = t.small();
  const FieldSpec& B = t.big();

  SECTION("zero coefficients fail") {
    const CriterionReport r = criterion_curve_count(make_curve(S, 0, 0));
    CHECK_FALSE(r.verdict);
    CHECK(r.lhs == 17);
    CHECK(r.rhs == 9);
  }

  SECTION("agrees with the fraction-sum criterion without a b-term") {
    for (std::uint32_t a = 0; a < S.size(); ++a)
      for (std::uint32_t c = 0; c < S.size(); ++c)
        REQUIRE(criterion_curve_count(make_curve(S, a, c)).verdict ==
                criterion_fraction_sum(t, a, 0, c).verdict);
  }

  SECTION("the b-aware form agrees with the oracle on all 512 triples") {
    for (std::uint32_t a = 0; a < S.size(); ++a)
      for (std::uint32_t b = 0; b < S.size(); ++b)
        for (std::uint32_t c = 0; c < S.size(); ++c) {
          // Tr^n_2(b) = Tr^m_1(b) in {0, 1} is the effective F_4 coefficient
          const std::uint32_t b4 = static_cast<std::uint32_t>(S.trace_bit(b));
          const CriterionReport r = criterion_curve_count(make_curve(S, a, c), t, b4);
          REQUIRE(r.verdict == criterion_fraction_sum(t, a, b, c).verdict);
        }
  }

  SECTION("b-aware form covers the primitive F_4 coefficients too") {
    const std::uint32_t g = t.f4_generator();
    for (std::uint32_t a = 0; a < S.size(); ++a)
      for (std::uint32_t c = 0; c < S.size(); c += 3)
        for (const std::uint32_t b4 : {g, B.sqr(g)}) {
          const std::uint32_t a1 = B.add(t.up(a), B.mul(t.up(c), g));
          const DillonFamilySpec s = make_family(t, {{1, a1}}, b4, g);
          const CriterionReport r = criterion_curve_count(make_curve(S, a, c), t, b4);
          REQUIRE(r.verdict == is_hyper_bent_def(family_table(s), B));
        }
  }

  SECTION("mismatched tower is rejected") {
    FieldSpec other(3);
    CHECK(throws_code([&] { criterion_curve_count(make_curve(other, 1, 1), t, 1); },
                      errc::invalid_spec));
  }
}
