#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fermat/arith.hpp"
#include "fermat/error.hpp"
#include "fermat/gfield.hpp"
#include "oracle.hpp"

using namespace fermat;

namespace {

oracle::Poly to_naive(const Field& f, FieldElement e) {
  auto c = f.coeffs(e);
  c.resize(f.degree(), 0);
  return c;
}

FieldElement from_naive(const Field& f, const oracle::Poly& c) { return f.from_coeffs(c); }

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_factors(294) == std::vector<u64>{2, 3, 7});
  CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(pow_mod(3, 200, 1000003) == pow_mod(9, 100, 1000003));
  CHECK(checked_pow(97, 3).value() == 912673);
  CHECK_FALSE(checked_pow(2, 70).has_value());
  CHECK_FALSE(checked_pow(13, 7, 1000000).has_value());
  CHECK(prime_power(2197).value() == std::pair<u32, unsigned>{13, 3});
  CHECK_FALSE(prime_power(12).has_value());
  CHECK(isqrt(168) == 12);
  CHECK(isqrt(169) == 13);
  CHECK(p_adic_valuation(291, 97) == 1);
  CHECK(inverse_mod(3, 7).value() == 5);
  // Lucas: binom(14, 13) = 14 = 1 mod 13; binom(26, 13) = 2 mod 13.
  CHECK(binom_mod_p(14, 13, 13) == 1);
  CHECK(binom_mod_p(26, 13, 13) == 2);
  CHECK(binom_mod_p(13, 5, 13) == 0);
}

TEST_CASE("field construction") {
  CHECK(build_field(13, 2).order() == 169);
  CHECK(build_field(97, 2).order() == 9409);
  const Field f13 = build_field(13, 1);
  CHECK(f13.order() == 13);
  CHECK(f13.modulus().size() == 2);
  CHECK(f13.modulus()[0] == 0);
  CHECK(f13.modulus()[1] == 1);
  CHECK_THROWS_AS(build_field(2, 3), ValidationError);
  CHECK_THROWS_AS(build_field(15, 1), ValidationError);
  CHECK_THROWS_AS(build_field(13, 0), ValidationError);
  CHECK_THROWS_AS(build_field(13, 7), ValidationError);  // 13^7 > 2^22
}

TEST_CASE("modulus is the smallest monic irreducible") {
  for (auto [p, h] : std::vector<std::pair<u32, unsigned>>{{3, 2}, {3, 3}, {5, 2}, {7, 3}, {13, 2}, {13, 3}, {17, 2}, {3, 5}}) {
    CAPTURE(p);
    CAPTURE(h);
    const Field f = build_field(p, h);
    const auto expected = oracle::smallest_irreducible(p, h);
    const std::vector<u32> got(f.modulus().begin(), f.modulus().end());
    CHECK(got == expected);
  }
}

TEST_CASE("arithmetic agrees with naive polynomial arithmetic") {
  std::mt19937_64 rng(11);
  for (auto [p, h] : std::vector<std::pair<u32, unsigned>>{{13, 1}, {13, 2}, {13, 3}, {23, 2}, {7, 4}, {97, 2}}) {
    const Field f = build_field(p, h);
    const oracle::NaiveField nf(p, h);
    std::uniform_int_distribution<u64> pick(0, f.order() - 1);
    for (int i = 0; i < 300; ++i) {
      const auto na = nf.element(pick(rng)), nb = nf.element(pick(rng));
      const FieldElement a = from_naive(f, na), b = from_naive(f, nb);
      REQUIRE(to_naive(f, f.add(a, b)) == nf.add(na, nb));
      REQUIRE(to_naive(f, f.sub(a, b)) == nf.sub(na, nb));
      REQUIRE(to_naive(f, f.mul(a, b)) == nf.mul(na, nb));
      const u64 e = pick(rng) * 7 + 3;
      REQUIRE(to_naive(f, f.pow(a, e)) == nf.pow(na, e));
    }
  }
}

TEST_CASE("field axioms on samples") {
  std::mt19937_64 rng(5);
  const Field f = build_field(13, 3);
  std::uniform_int_distribution<u64> pick(0, f.order() - 1);
  for (int i = 0; i < 500; ++i) {
    const FieldElement a{u32(pick(rng))}, b{u32(pick(rng))}, c{u32(pick(rng))};
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    if (a != f.zero()) CHECK(f.mul(a, f.inv(a)) == f.one());
    CHECK(f.pow(f.add(a, b), 13) == f.add(f.pow(a, 13), f.pow(b, 13)));
    CHECK(f.frobenius(a, 1) == f.pow(a, 13));
  }
  CHECK_THROWS(f.inv(f.zero()));
}

TEST_CASE("generator, log and exp") {
  const Field f = build_field(13, 2);
  CHECK(f.multiplicative_order(f.generator()) == 168);
  for (u64 k = 0; k < 168; ++k) CHECK(f.log(f.exp(k)) == k);
  CHECK(f.exp(168) == f.one());
}

TEST_CASE("norm to a subfield") {
  const Field f = build_field(13, 2);
  CHECK(norm_to_subfield(f, f.one(), 1) == f.one());
  CHECK(norm_to_subfield(f, f.zero(), 1) == f.zero());
  CHECK(norm_to_subfield(f, f.one(), 2) == f.one());
  const FieldElement ng = norm_to_subfield(f, f.generator(), 1);
  CHECK(lies_in_subfield(f, ng, 1));
  CHECK(f.multiplicative_order(ng) == 12);
}

TEST_CASE("norm fibers are uniform") {
  for (auto [p, h, r] : std::vector<std::tuple<u32, unsigned, unsigned>>{{13, 2, 1}, {7, 3, 1}, {3, 6, 2}, {3, 6, 3}, {11, 2, 1}, {43, 2, 1}}) {
    const Field f = build_field(p, h);
    std::map<u32, u64> fiber;
    for (u64 i = 1; i < f.order(); ++i) ++fiber[norm_to_subfield(f, FieldElement{u32(i)}, r).value];
    const u64 sub = *checked_pow(p, r);
    CHECK(fiber.size() == sub - 1);
    for (const auto& [t, size] : fiber) CHECK(size == (f.order() - 1) / (sub - 1));
  }
}

TEST_CASE("subfield membership") {
  const Field f = build_field(13, 2);
  CHECK(lies_in_subfield(f, f.zero(), 1));
  CHECK(lies_in_subfield(f, f.one(), 1));
  CHECK_FALSE(lies_in_subfield(f, f.generator(), 1));
  CHECK(lies_in_subfield(f, f.generator(), 2));
  CHECK(subfield_elements(f, 1).size() == 13);
  CHECK(minimal_subfield_degree(f, f.from_int(5)) == 1);
  CHECK(minimal_subfield_degree(f, f.generator()) == 2);
  const Field g = build_field(3, 6);
  CHECK(subfield_elements(g, 2).size() == 9);
  CHECK(subfield_elements(g, 3).size() == 27);
}

TEST_CASE("nth roots") {
  const Field f13 = build_field(13, 1);
  CHECK(f13.nth_root_count(f13.zero(), 5) == 1);
  CHECK(f13.nth_root_count(f13.one(), 4) == 4);
  u64 brute = 0;
  for (u32 y = 0; y < 13; ++y) brute += f13.pow(FieldElement{y}, 4) == f13.one();
  CHECK(brute == 4);

  const Field f = build_field(23, 2);
  const FieldElement minus_one = f.from_int(-1);
  CHECK(f.nth_root_count(minus_one, 8) == 8);
  brute = 0;
  for (u64 y = 0; y < f.order(); ++y) brute += f.pow(FieldElement{u32(y)}, 8) == minus_one;
  CHECK(brute == 8);
  const auto root = f.nth_root(minus_one, 8);
  REQUIRE(root.has_value());
  CHECK(f.pow(*root, 8) == minus_one);

  for (u64 n : {1, 2, 3, 8, 11, 24, 528}) {
    u64 total = 0;
    for (u64 c = 0; c < f.order(); ++c) total += f.nth_root_count(FieldElement{u32(c)}, n);
    CHECK(total == f.order());
  }
}

TEST_CASE("serialization") {
  const Field f = build_field(13, 2);
  const FieldElement e = f.from_coeffs(std::vector<u32>{3, 12});
  CHECK(f.serialize(e) == "[3,12]");
  CHECK(f.parse_element("[3,12]") == e);
  CHECK(f.parse_element("-1") == f.from_int(12));
  CHECK(f.parse_element("[5]") == f.from_int(5));
  CHECK_THROWS_AS(f.parse_element("[1,2,3]"), ValidationError);
  CHECK_THROWS_AS(f.parse_element("x"), ValidationError);
  CHECK(f.descriptor().rfind("13^2:", 0) == 0);
}

TEST_CASE("embeddings and transfer") {
  const Field small = build_field(13, 1), big = build_field(13, 2), cube = build_field(13, 3);
  const Embedding e(small, big);
  for (u32 c = 0; c < 13; ++c) {
    CHECK(e(FieldElement{c}) == big.from_int(c));
    CHECK(e.preimage(big.from_int(c)).value() == FieldElement{c});
  }
  CHECK_FALSE(e.preimage(big.generator()).has_value());
  const Field f3 = build_field(3, 2), f6 = build_field(3, 6);
  const Embedding e36(f3, f6);
  for (u64 i = 0; i < 9; ++i) {
    for (u64 j = 0; j < 9; ++j) {
      const FieldElement a{u32(i)}, b{u32(j)};
      CHECK(e36(f3.mul(a, b)) == f6.mul(e36(a), e36(b)));
      CHECK(e36(f3.add(a, b)) == f6.add(e36(a), e36(b)));
    }
  }
  CHECK(transfer(small, small.from_int(7), cube) == cube.from_int(7));
}
