#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermat/counting.hpp"
#include "fermat/error.hpp"
#include "oracle.hpp"

using namespace fermat;

TEST_CASE("cubic subcount matches a naive projective enumeration") {
  const auto c = cubic_subcount(1, 1, 97, 1);
  CHECK(c.cubic_points == 117);
  CHECK(c.k == 9);
  for (u32 p : {7, 13, 19, 31, 37, 43, 5, 11, 17, 23, 29}) {
    for (i64 a = 1; a < p; a += 2) {
      for (i64 b = 1; b < p; b += 3) {
        CAPTURE(p);
        CAPTURE(a);
        CAPTURE(b);
        const auto got = cubic_subcount(a, b, p, 1);
        const auto want = oracle::naive_cubic(a, b, p);
        CHECK(got.cubic_points == want.points);
        CHECK(got.k == want.zero_coordinate);
        CHECK(got.k <= 9);
        if (p % 3 != 1) CHECK(got.cubic_points == p + 1);
      }
    }
  }
}

TEST_CASE("cubic subcount over an extension") {
  // p^r = 25 = 1 mod 3 and 121 = 1 mod 3: compare with enumeration via the field API.
  for (auto [p, r] : std::vector<std::pair<u32, unsigned>>{{5, 2}, {11, 2}, {7, 2}}) {
    const Field f = build_field(p, r);
    const auto got = cubic_subcount(f, f.one(), f.from_int(2));
    u64 points = 0;
    for (u64 x = 0; x < f.order(); ++x) {
      const FieldElement X{u32(x)};
      for (u64 y = 0; y < f.order(); ++y) {
        const FieldElement Y{u32(y)};
        if (f.add(f.pow(X, 3), f.mul(f.from_int(2), f.pow(Y, 3))) == f.one()) ++points;
      }
      if (f.add(f.pow(X, 3), f.from_int(2)) == f.zero()) ++points;
    }
    CHECK(got.cubic_points == points);
  }
  CHECK_THROWS_AS(cubic_subcount(1, 1, 3, 1), PreconditionError);
  CHECK_THROWS_AS(cubic_subcount(0, 1, 13, 1), PreconditionError);
}

TEST_CASE("closed-form worked examples") {
  const PointCount c1 = closed_form_count(make_curve(97, 2, 294, 1, 1));
  CHECK(c1.value == 1038114);
  CHECK(c1.method == CountMethod::norm_cubic);
  CHECK(c1.witnesses.cubic_points.value() == 117);
  CHECK(c1.witnesses.k.value() == 9);
  CHECK(c1.witnesses.r.value() == 1);

  const PointCount c2 = closed_form_count(make_curve(23, 2, 8, 1, 1));
  CHECK(c2.value == 3 * 8 + 64 * 23);
  CHECK(c2.value == 1496);
  CHECK(c2.method == CountMethod::third_norm);
  CHECK(c2.witnesses.subfield_mod3.value() == 2);
  CHECK(c2.witnesses.normalized);

  const PointCount c3 = closed_form_count(make_curve(13, 3, 61, 1, 1));
  CHECK(c3.value == 3 * 61 + 61 * 61 * 11);
  CHECK(c3.value == 41114);
  CHECK(c3.witnesses.subfield_mod3.value() == 1);
  CHECK(count_points(make_curve(13, 3, 61, 1, 1)).value == 41114);

  CHECK_THROWS_AS(closed_form_count(make_curve(13, 2, 8, -1, -1)), PreconditionError);
}

TEST_CASE("closed forms agree with enumeration on every applicable small curve") {
  int checked = 0;
  for (u32 p = 5; p < 100; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned h = 2; h <= 4; ++h) {
      const auto q = checked_pow(p, h, 10000);
      if (!q) continue;
      const Field f = build_field(p, h);
      for (u64 n : divisors(3 * (*q - 1))) {
        if (n % p == 0 || n < 4) continue;
        for (u32 a : {1u, 2u, 3u}) {
          const FermatCurve c = make_curve(f, n, f.from_int(a), f.one());
          PointCount pc;
          try {
            pc = closed_form_count(c);
          } catch (const PreconditionError&) {
            continue;
          }
          CAPTURE(c.descriptor());
          CHECK(pc.value == count_points(c).value);
          if (pc.method == CountMethod::norm_cubic) {
            // n^2/9 (cubic - k) + n k / 3 is an integer because 3 | n.
            CHECK(n % 3 == 0);
          }
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("Korchmaros-Szonyi worked examples") {
  const auto [c1, k1] = ks_count(8, 23, 2);
  CHECK(k1.t == 2);
  CHECK(k1.l == 3);
  CHECK(k1.exponent == 0);
  CHECK(k1.applicable == Applicability::yes);
  CHECK(c1.value == 24 + 64 * 21 + 64 * 2 * 1);
  CHECK(c1.value == 1496);

  const auto [c2, k2] = ks_count(61, 13, 3);
  CHECK(k2.t == 1);
  CHECK(k2.l == 1);
  CHECK(k2.applicable == Applicability::yes);
  CHECK(c2.value == 41114);

  // 294 does not divide 97 + 1.
  CHECK_THROWS_AS(ks_count(294, 97, 2), PreconditionError);
  CHECK_THROWS_AS(ks_count(8, 23, 1), PreconditionError);
  CHECK_THROWS_AS(ks_count(8, 16, 2), PreconditionError);
}

TEST_CASE("Korchmaros-Szonyi parameters are consistent") {
  for (u64 q : {5, 7, 11, 13, 17, 19, 23, 25, 27, 49}) {
    for (u64 m = 2; m <= 3; ++m) {
      const u64 big = (*checked_pow(q, m) - 1) / (q - 1);
      for (u64 n : divisors(big)) {
        if (big / n < 2 || n % prime_power(q)->first == 0) continue;
        const auto [count, k] = ks_count(n, q, m);
        CHECK(k.cofactor == big / n);
        CHECK(k.t == q % k.cofactor);
        CHECK(k.cofactor % k.l == 0);
        CHECK((k.t + 1) % k.l == 0);
        CHECK(k.exponent == (k.t - 1) * (k.cofactor - k.l));
      }
    }
  }
  CHECK(ks_applicability(13, 5, 1, 0) == Applicability::yes);
  CHECK(ks_applicability(5, 100, 3, 200) == Applicability::no);
  CHECK(to_string(Applicability::inconclusive) == "inconclusive");
}

TEST_CASE("Korchmaros-Szonyi counts for a curve") {
  const auto v = ks_counts_for_curve(make_curve(23, 2, 8, 1, 1));
  REQUIRE(v.size() == 1);
  CHECK(v[0].first.value == 1496);
  CHECK(v[0].first.method == CountMethod::korchmaros_szonyi);
  for (const auto& [pc, k] : ks_counts_for_curve(make_curve(13, 3, 61, 1, 1))) {
    if (k.applicable == Applicability::yes) CHECK(pc.value == 41114);
  }
}
