#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fermat/bounds.hpp"
#include "fermat/error.hpp"

using namespace fermat;

TEST_CASE("rational arithmetic") {
  const Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.floor() == -2);
  CHECK(a.ceil() == -1);
  CHECK(a.to_string() == "-3/2");
  CHECK(Rational(8, 4).to_string() == "2");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(7, 1).floor() == 7);
  CHECK_THROWS(Rational(1, 0));
  CHECK(to_string(i128(-1234567890123LL) * 1000) == "-1234567890123000");
}

TEST_CASE("Hasse-Weil intervals") {
  const auto h = hasse_weil(8, 169);
  CHECK(h.lower == -376);
  CHECK(h.upper == 716);
  CHECK(h.lower_clamped() == 0);
  const auto c = hasse_weil(3, 25);
  CHECK(c.lower == 16);
  CHECK(c.upper == 36);
  // sqrt(13) is irrational: the interval is widened outward.
  const auto w = hasse_weil(4, 13);
  CHECK(w.lower == 14 - 22);
  CHECK(w.upper == 14 + 22);
  CHECK(hasse_weil(make_curve(13, 2, 8, -1, -1)).upper == 716);
  CHECK(hasse_weil(1, 13).lower == 14);
  CHECK(hasse_weil(2, 13).upper == 14);
}

TEST_CASE("Hasse-Weil membership is exact") {
  // n = 4, q = 13: |N - 14| <= 6 sqrt(13) = 21.63...
  CHECK(within_hasse_weil(4, 13, 35));
  CHECK_FALSE(within_hasse_weil(4, 13, 36));
  CHECK(within_hasse_weil(4, 13, 0));
  CHECK(within_hasse_weil(8, 169, 716));
  CHECK_FALSE(within_hasse_weil(8, 169, 717));
  CHECK(within_hasse_weil(3, 25, 16));
  CHECK_FALSE(within_hasse_weil(3, 25, 15));
  for (u64 q : {13, 17, 169, 2197, 9409}) {
    for (u64 n : {3, 4, 5, 8, 12}) {
      const auto h = hasse_weil(n, q);
      CHECK(h.upper >= q + 1);
      // Nothing above the widened upper end is accepted.
      CHECK_FALSE(within_hasse_weil(n, q, h.upper + 1));
    }
  }
}

TEST_CASE("closed Stohr-Voloch bound against its expanded forms") {
  for (u64 n : {3, 4, 5, 8, 12, 24, 294}) {
    for (u64 q : {169, 529, 2197, 9409}) {
      for (u64 d : {0, 3, 24, 882}) {
        const i128 N = n, Q = q, D = d;
        // s = 1: n(n-3)/2 + n(q+2)/2 - d(n-2)/2
        CHECK(sv_closed_bound(n, q, d, 1) == Rational(N * (N - 3) + N * (Q + 2) - D * (N - 2), 2));
        // s = 2: 2n(2n + q - d - 1)/5 + d
        CHECK(sv_closed_bound(n, q, d, 2) == Rational(2 * N * (2 * N + Q - D - 1) + 5 * D, 5));
        // s = 3: n(5n + q - 1)/3 - d(n - 3)/3
        CHECK(sv_closed_bound(n, q, d, 3) == Rational(N * (5 * N + Q - 1) - D * (N - 3), 3));
      }
    }
  }
  CHECK(sv_closed_bound(8, 169, 0, 3) >= Rational(512));
  CHECK_THROWS_AS(sv_closed_bound(8, 169, 0, 4), ValidationError);
}

TEST_CASE("conic constant A vanishes for n = 3") {
  // With A = 0 the bound is n(n-3)(M-1)/2 + sn(q+M)/M - dB/M, M = 5, B = 2n - 5.
  for (u64 q : {25, 49, 169}) {
    for (u64 d : {0, 3, 9}) {
      const i128 Q = q, D = d;
      CHECK(sv_closed_bound(3, q, d, 2) == Rational(6 * (Q + 5) - D, 5));
    }
  }
}

TEST_CASE("floor bounds") {
  CHECK(sv_floor_bound(8, 169, 0, 3) == 64 * (208 / 24));
  CHECK(sv_floor_bound(8, 169, 0, 3) == 512);
  CHECK(sv_floor_bound(294, 9409, 882, 3) == 86436 * (9996 / 882) + 882);
  CHECK(sv_floor_bound(294, 9409, 882, 3) == 951678);
  CHECK(sv_floor_bound(8, 529, 24, 3) == 64 * (544 / 24) + 24);
  CHECK(sv_floor_bound(8, 529, 24, 3) == 1432);
  CHECK_THROWS_AS(sv_floor_bound(10, 169, 0, 3), PreconditionError);
  for (u64 q : {169, 529, 2197}) {
    for (u64 n : divisors(q - 1)) {
      if (3 * n > q - 1) continue;
      for (u64 d : {u64{0}, 3 * n}) {
        for (int s = 1; s <= 3; ++s) {
          const u64 f = sv_floor_bound(n, q, d, s);
          CHECK(f % (n * n) == d % (n * n));
          CHECK(Rational(f) <= sv_closed_bound(n, q, d, s));
        }
      }
    }
  }
}

TEST_CASE("bound reports for the worked examples") {
  const BoundReport r1 = bound_report(make_curve(13, 2, 8, -1, -1), 512);
  CHECK(r1.d == 0);
  CHECK(r1.sv_floor.at(3) == 512);
  CHECK(r1.comparisons.at("sv-floor-3").attained);
  CHECK_FALSE(r1.comparisons.at("sv-floor-3").violated);
  CHECK(r1.guards.at(3).empty());

  const BoundReport r2 = bound_report(make_curve(97, 2, 294, 1, 1), 1038114);
  CHECK(r2.d == 882);
  CHECK(r2.sv_floor.at(3) == 951678);
  CHECK(r2.comparisons.at("sv-floor-3").violated);
  CHECK_FALSE(r2.guards.at(3).empty());

  const BoundReport r3 = bound_report(make_curve(23, 2, 8, 1, 1), 1496);
  CHECK(r3.d == 24);
  CHECK(r3.sv_floor.at(3) == 1432);
  CHECK(r3.comparisons.at("sv-floor-3").violated);
  CHECK(r3.comparisons.at("hasse-weil").attained);

  const BoundReport r4 = bound_report(make_curve(13, 2, 10, 1, 1));
  CHECK(r4.n == 2);
  CHECK(r4.original_n == 10);
  CHECK(r4.comparisons.empty());
}

TEST_CASE("bounds are invariant under scaling by n-th powers") {
  const Field f = build_field(13, 2);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<u64> pick(1, f.order() - 1);
  for (int i = 0; i < 20; ++i) {
    const FieldElement a{u32(pick(rng))}, b{u32(pick(rng))}, c{u32(pick(rng))};
    const FermatCurve x = make_curve(f, 8, a, b);
    const FermatCurve y = make_curve(f, 8, f.mul(a, f.pow(c, 8)), b);
    const auto rx = bound_report(x), ry = bound_report(y);
    CHECK(rx.d == ry.d);
    CHECK(rx.sv_floor == ry.sv_floor);
    CHECK(rx.sv_closed == ry.sv_closed);
  }
}

TEST_CASE("crossover diagnostic") {
  // d = 0 and 13n < q - 1: the cubic floor bound should be the smallest.
  const BoundReport r = bound_report(make_curve(13, 2, 8, -1, -1));
  CHECK(r.crossover_regime);
  CHECK(r.crossover_holds);
  const BoundReport s = bound_report(make_curve(23, 2, 8, 1, 1));
  CHECK_FALSE(s.crossover_regime);
}
