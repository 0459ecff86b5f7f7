#include "fermat/counting.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "fermat/classify.hpp"
#include "fermat/error.hpp"

namespace fermat {

CubicSubcount cubic_subcount(const Field& field, FieldElement a, FieldElement b) {
  if (field.characteristic() <= 3) throw PreconditionError("cubic subcount needs p > 3");
  if (a == field.zero() || b == field.zero()) {
    throw PreconditionError("cubic subcount needs nonzero coefficients");
  }
  const FieldElement binv = field.inv(b);
  CubicSubcount out;
  for (u64 idx = 0; idx < field.order(); ++idx) {
    const FieldElement x{static_cast<u32>(idx)};
    const FieldElement rhs = field.mul(field.sub(field.one(), field.mul(a, field.pow(x, 3))), binv);
    out.cubic_points += field.nth_root_count(rhs, 3);
  }
  const u64 infinity = field.nth_root_count(field.neg(field.div(b, a)), 3);
  out.cubic_points += infinity;
  out.k = field.nth_root_count(binv, 3) + field.nth_root_count(field.inv(a), 3) + infinity;
  return out;
}

CubicSubcount cubic_subcount(i64 a, i64 b, u32 p, unsigned r) {
  const Field f = build_field(p, r);
  return cubic_subcount(f, f.from_int(a), f.from_int(b));
}

PointCount closed_form_count(const FermatCurve& curve) {
  const Field& f = curve.field();
  const u64 n = curve.degree();
  if (curve.p() <= 3) throw PreconditionError("closed-form counts need p > 3");

  const u32 p = curve.p();
  const bool p_n_minus_3 = (n % p + p - 3 % p) % p == 0;
  const bool p_3n_minus_1 = (3 * (n % p) + p - 1) % p == 0;

  if (p_n_minus_3) {
    if (const auto r = subfield_parameter(n, p, curve.h(), SubfieldShape::triple)) {
      if (lies_in_subfield(f, curve.a(), *r) && lies_in_subfield(f, curve.b(), *r)) {
        const Field sub = build_field(p, *r);
        const u64 pr = sub.order();
        PointCount out;
        out.method = CountMethod::norm_cubic;
        out.witnesses.r = *r;
        out.witnesses.subfield_mod3 = static_cast<unsigned>(pr % 3);
        const u128 third = n / 3;
        if (pr % 3 == 1) {
          const CubicSubcount cs =
              cubic_subcount(sub, transfer(f, curve.a(), sub), transfer(f, curve.b(), sub));
          out.witnesses.cubic_points = cs.cubic_points;
          out.witnesses.k = cs.k;
          out.value = static_cast<u64>(third * third * (cs.cubic_points - cs.k) + third * cs.k);
        } else {
          // Cubing is a bijection on GF(p^r): p^r + 1 points, three on the axes.
          out.witnesses.cubic_points = pr + 1;
          out.witnesses.k = 3;
          out.value = static_cast<u64>(third * third * (pr - 2) + n);
        }
        return out;
      }
    }
  }
  if (p_3n_minus_1) {
    if (const auto r = subfield_parameter(n, p, curve.h(), SubfieldShape::third)) {
      if (lies_in_subfield(f, f.pow(curve.a(), 3), *r) &&
          lies_in_subfield(f, f.pow(curve.b(), 3), *r)) {
        const u128 pr = *checked_pow(p, *r);
        PointCount out;
        out.method = CountMethod::third_norm;
        out.witnesses.r = *r;
        out.witnesses.subfield_mod3 = static_cast<unsigned>(pr % 3);
        out.witnesses.normalized = true;
        const u128 nn = u128{n} * n;
        out.value = static_cast<u64>(3 * u128{n} + (pr % 3 == 1 ? nn * (pr - 2) : nn * pr));
        return out;
      }
    }
  }
  throw PreconditionError("no closed-form count applies to " + curve.descriptor());
}

std::string to_string(Applicability a) {
  switch (a) {
    case Applicability::yes:
      return "yes";
    case Applicability::no:
      return "no";
    case Applicability::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Applicability ks_applicability(u32 p, u64 cofactor, u64 t, u64 exponent) {
  if (exponent == 0) return p > 1 ? Applicability::yes : Applicability::no;
  // Widen every long double step by a relative margin far above its rounding
  // error, so the interval [lo, hi] surely contains the true log of the bound.
  constexpr long double slack = 1e-12L;
  const long double s = std::sin(std::numbers::pi_v<long double> / (2.0L * cofactor));
  const long double s_lo = s * (1 - slack), s_hi = s * (1 + slack);
  const long double e = -1.0L / static_cast<long double>(t + 1);
  const long double base_hi = (2 * std::pow(s_lo, e) + 1) * (1 + slack);
  const long double base_lo = (2 * std::pow(s_hi, e) + 1) * (1 - slack);
  const long double log_hi = exponent * std::log(base_hi) * (1 + slack);
  const long double log_lo = exponent * std::log(base_lo) * (1 - slack);
  const long double lp = std::log(static_cast<long double>(p));
  const long double lp_lo = lp * (1 - slack), lp_hi = lp * (1 + slack);
  if (lp_lo > log_hi) return Applicability::yes;
  if (lp_hi <= log_lo) return Applicability::no;
  return Applicability::inconclusive;
}

std::pair<PointCount, KSParameters> ks_count(u64 n, u64 q, u64 m) {
  const auto pp = prime_power(q);
  if (!pp || pp->first == 2) throw PreconditionError("q must be an odd prime power");
  if (m < 2) throw PreconditionError("extension degree m must exceed 1");
  if (n == 0) throw PreconditionError("n must be positive");
  const auto qm = checked_pow(q, m, u64{1} << 62);
  if (!qm) throw PreconditionError("q^m is too large");
  const u64 big = static_cast<u64>((*qm - 1) / (q - 1));
  if (big % n != 0) {
    throw PreconditionError("n = " + std::to_string(n) + " does not divide (q^m-1)/(q-1) = " +
                            std::to_string(big));
  }
  KSParameters k;
  k.m = m;
  k.cofactor = big / n;
  if (k.cofactor < 2) throw PreconditionError("cofactor (q^m-1)/(n(q-1)) must be at least 2");
  // The cofactor divides 1 + q + ... + q^(m-1), which is prime to q, so t >= 1.
  k.t = q % k.cofactor;
  k.l = std::gcd(k.cofactor, k.t + 1);
  k.exponent = (k.t - 1) * (k.cofactor - k.l);
  k.applicable = ks_applicability(pp->first, k.cofactor, k.t, k.exponent);

  const i128 nn = static_cast<i128>(n) * n;
  const i128 ll = static_cast<i128>(k.l);
  const i128 value = 3 * static_cast<i128>(n) + nn * (static_cast<i128>(q) - 2) + nn * (ll - 1) * (ll - 2);
  PointCount out;
  out.value = static_cast<u64>(value);
  out.method = CountMethod::korchmaros_szonyi;
  out.witnesses.m = m;
  out.witnesses.t = k.t;
  out.witnesses.l = k.l;
  out.witnesses.applicable = to_string(k.applicable);
  return {out, k};
}

std::vector<std::pair<PointCount, KSParameters>> ks_counts_for_curve(const FermatCurve& curve) {
  std::vector<std::pair<PointCount, KSParameters>> out;
  const Field& f = curve.field();
  const u64 n = curve.degree();
  const auto is_power = [&](FieldElement e) { return f.nth_root_count(e, n) > 0; };
  if (!is_power(curve.a()) || !is_power(curve.b()) || !is_power(f.neg(f.one()))) return out;
  for (u64 r : divisors(curve.h())) {
    if (r == curve.h()) break;
    const u64 base = static_cast<u64>(*checked_pow(curve.p(), r));
    const u64 m = curve.h() / r;
    const u64 big = static_cast<u64>((curve.q() - 1) / (base - 1));
    if (big % n != 0 || big / n < 2) continue;
    out.push_back(ks_count(n, base, m));
  }
  return out;
}

}  // namespace fermat
