#include "fermat/localgeo.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fermat/error.hpp"

namespace fermat {

namespace {

void require_system(int s) {
  if (s < 1 || s > 3) throw ValidationError("linear system degree must be 1, 2 or 3");
}

bool p_divides(const FermatCurve& c, i64 mult, i64 offset) {
  const i64 p = c.p();
  return (static_cast<i128>(c.degree() % p) * mult + offset) % p == 0;
}

// Pivot reduction: returns the valuations, or nullopt when some element of
// the span vanishes to full precision.
std::optional<std::vector<u64>> pivot_valuations(std::vector<PowerSeries> rows) {
  if (rows.empty()) return std::vector<u64>{};
  const Field& f = rows.front().field();
  std::vector<u64> orders;
  while (!rows.empty()) {
    size_t best = rows.size();
    u64 best_v = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto v = rows[i].valuation();
      if (v && (best == rows.size() || *v < best_v)) {
        best = i;
        best_v = *v;
      }
    }
    if (best == rows.size()) return std::nullopt;
    const PowerSeries pivot = rows[best];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    const FieldElement lead_inv = f.inv(pivot[best_v]);
    for (auto& r : rows) {
      const FieldElement c = r[best_v];
      if (c != f.zero()) r = r - pivot.scaled(f.mul(c, lead_inv));
    }
    orders.push_back(best_v);
  }
  return orders;
}

}  // namespace

OrderSequence order_sequence(const BiPoly& f, AffinePoint P, int s, u64 precision, u64 ceiling) {
  require_system(s);
  if (precision == 0) throw PreconditionError("precision must be positive");
  u64 T = precision;
  for (;;) {
    const BranchSeries br = branch_expansion(f, P, T);
    const PowerSeries x = br.x(), y = br.y();
    std::vector<PowerSeries> xp{PowerSeries::constant(f.field(), f.field().one(), T)}, yp = xp;
    for (int k = 1; k <= s; ++k) {
      xp.push_back(xp.back() * x);
      yp.push_back(yp.back() * y);
    }
    std::vector<PowerSeries> rows;
    for (int d = 0; d <= s; ++d) {
      for (int j = 0; j <= d; ++j) rows.push_back(xp[d - j] * yp[j]);
    }
    if (auto orders = pivot_valuations(std::move(rows))) {
      std::sort(orders->begin(), orders->end());
      return OrderSequence{s, *orders, T};
    }
    if (T >= ceiling) {
      throw PrecisionExhausted("fewer than " + std::to_string((s + 2) * (s + 1) / 2) +
                                   " orders below precision " + std::to_string(T) + "; raise the precision",
                               T);
    }
    T = std::min(2 * T, std::max(ceiling, T));
  }
}

u64 default_precision(const FermatCurve& curve) {
  const u64 half = *checked_pow(curve.p(), (curve.h() + 1) / 2);
  return std::max<u64>(3 * curve.degree(), half) + 16;
}

BiPoly fermat_equation(const FermatCurve& curve, const Field& ambient) {
  const Field& f = curve.field();
  for (FieldElement c : {curve.a(), curve.b()}) {
    if (ambient.characteristic() != f.characteristic() ||
        ambient.degree() % minimal_subfield_degree(f, c) != 0) {
      throw PreconditionError("curve coefficients do not lie in the ambient field");
    }
  }
  BiPoly out(ambient);
  out.add_term(transfer(f, curve.a(), ambient), curve.degree(), 0);
  out.add_term(transfer(f, curve.b(), ambient), 0, curve.degree());
  out.add_term(ambient.neg(ambient.one()), 0, 0);
  return out;
}

OrderSequence order_sequence(const FermatCurve& curve, const LocalPoint& P, int s,
                             std::optional<u64> precision, u64 ceiling) {
  const u64 T = precision.value_or(default_precision(curve));
  return order_sequence(fermat_equation(curve, P.field), P.point, s, T,
                        precision ? T : std::max(T, ceiling));
}

unsigned generic_extension_degree(const FermatCurve& curve) {
  const Field& f = curve.field();
  const u64 n = curve.degree();
  const unsigned r0 = std::lcm(minimal_subfield_degree(f, curve.a()), minimal_subfield_degree(f, curve.b()));
  // Every Frobenius-nonclassical shape over a subfield of GF(Q) forces
  // gcd(n, Q-1) >= n/3, and then all of GF(Q) tends to be special. So the
  // least gcd wins, then Q > (3n+3)^2, then the least K.
  const u128 wanted = u128{3 * n + 3} * (3 * n + 3);
  unsigned best = 0;
  bool best_large = false;
  u64 best_gcd = 0;
  for (unsigned K = r0;; K += r0) {
    const auto order = checked_pow(curve.p(), K, Field::kMaxOrder);
    if (!order) break;
    if (curve.h() % K == 0) continue;
    const bool large = *order > wanted;
    const u64 g = std::gcd(n, *order - 1);
    if (best == 0 || g < best_gcd || (g == best_gcd && large && !best_large)) {
      best = K;
      best_large = large;
      best_gcd = g;
    }
  }
  return best ? best : curve.h();
}

LocalPoint sample_generic_point(const FermatCurve& curve, u64 seed) {
  const unsigned K = generic_extension_degree(curve);
  const Field E = build_field(curve.p(), K);
  const unsigned common = std::gcd(K, curve.h());
  const FieldElement a = transfer(curve.field(), curve.a(), E);
  const FieldElement b = transfer(curve.field(), curve.b(), E);
  const u64 n = curve.degree();
  const u64 group = E.order() - 1;
  const u64 roots_of_unity = std::gcd(n, group);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> pick(1, group);
  std::uniform_int_distribution<u64> twist(0, roots_of_unity - 1);
  for (int attempt = 0; attempt < 1 << 16; ++attempt) {
    const FieldElement x = E.exp(pick(rng) % group);
    if (common < K && lies_in_subfield(E, x, common)) continue;
    const FieldElement rhs = E.div(E.sub(E.one(), E.mul(a, E.pow(x, n))), b);
    if (rhs == E.zero()) continue;
    const auto y0 = E.nth_root(rhs, n);
    if (!y0) continue;
    const FieldElement zeta = E.exp((group / roots_of_unity) * twist(rng) % group);
    return LocalPoint{E, AffinePoint{x, E.mul(*y0, zeta)}};
  }
  throw PreconditionError("no generic point found on " + curve.descriptor());
}

LocalPoint axis_point(const FermatCurve& curve) {
  for (unsigned K = curve.h();; K += curve.h()) {
    if (!checked_pow(curve.p(), K, Field::kMaxOrder)) break;
    const Field E = build_field(curve.p(), K);
    const FieldElement ainv = E.inv(transfer(curve.field(), curve.a(), E));
    if (const auto u = E.nth_root(ainv, curve.degree())) {
      return LocalPoint{E, AffinePoint{*u, E.zero()}};
    }
  }
  throw PreconditionError("no field within the order cap contains a point (u:0:1)");
}

std::string to_string(const Multiplicity& m) {
  return (m.at_least ? ">= " : "") + std::to_string(m.value);
}

Multiplicity intersection_multiplicity(const BiPoly& G, const BiPoly& C, AffinePoint P, u64 precision) {
  if (C.eval(P.x, P.y) != C.field().zero()) throw PreconditionError("point is not on the second curve");
  const BranchSeries br = branch_expansion(G, P, precision);
  const auto v = evaluate(C, br.x(), br.y()).valuation();
  if (!v) return Multiplicity{precision, true};
  return Multiplicity{*v, false};
}

BiPoly osculating_curve(const FermatCurve& curve, const LocalPoint& P, int s) {
  require_system(s);
  const Field& E = P.field;
  const FieldElement u = P.point.x, v = P.point.y;
  if (u == E.zero() || v == E.zero()) throw PreconditionError("osculating curves need uv != 0");
  const BiPoly F = fermat_equation(curve, E);
  if (F.eval(u, v) != E.zero()) throw PreconditionError("point is not on the curve");
  const FieldElement a = transfer(curve.field(), curve.a(), E);
  const FieldElement b = transfer(curve.field(), curve.b(), E);
  const u64 n = curve.degree();
  BiPoly out(E);
  u64 expected = 0;
  if (s == 3) {
    if (p_divides(curve, 1, -3)) {
      out.add_term(E.mul(a, E.pow(u, n - 3)), 3, 0);
      out.add_term(E.mul(b, E.pow(v, n - 3)), 0, 3);
      out.add_term(E.neg(E.one()), 0, 0);
    } else if (p_divides(curve, 3, -1)) {
      const FieldElement a3 = E.pow(a, 3), b3 = E.pow(b, 3);
      BiPoly lin(E);
      lin.add_term(E.mul(a3, E.pow(u, 3 * n - 1)), 1, 0);
      lin.add_term(E.mul(b3, E.pow(v, 3 * n - 1)), 0, 1);
      lin.add_term(E.neg(E.one()), 0, 0);
      out = lin.pow(3);
      out.add_term(E.mul(E.from_int(27), E.mul(E.mul(a3, b3), E.pow(E.mul(u, v), 3 * n - 1))), 1, 1);
    } else {
      throw PreconditionError("osculating cubic needs p | n-3 or p | 3n-1");
    }
    expected = curve.p();
  } else if (s == 2) {
    if (n != curve.q() - 1 || E.add(a, b) != E.one()) {
      throw PreconditionError("osculating conic needs n = q-1 and a + b = 1");
    }
    const u64 q = curve.q();
    out.add_term(E.pow(E.mul(a, u), q), 0, 1);
    out.add_term(E.pow(E.mul(b, v), q), 1, 0);
    out.add_term(E.neg(E.one()), 1, 1);
    expected = q;
  } else {
    throw PreconditionError("osculating curves are provided for s = 2 and s = 3");
  }
  const Multiplicity m = intersection_multiplicity(F, out, P.point, expected + 8);
  if (!m.at_least && m.value < expected) {
    throw InternalMismatch("osculating curve meets the curve with multiplicity " + to_string(m) +
                           " < " + std::to_string(expected));
  }
  return out;
}

BiPoly frobenius_identity_function(const FermatCurve& curve, int s) {
  require_system(s);
  const Field& f = curve.field();
  const u64 n = curve.degree(), q = curve.q();
  const FieldElement a = curve.a(), b = curve.b(), minus_one = f.neg(f.one());
  BiPoly g(f);
  if (s == 1) {
    g.add_term(a, n - 1 + q, 0);
    g.add_term(b, 0, n - 1 + q);
    g.add_term(minus_one, 0, 0);
    return g;
  }
  if (s == 2) {
    if (curve.p() <= 5 || !p_divides(curve, 1, 1)) {
      throw PreconditionError("conic identity needs p > 5 and p | n+1");
    }
    g.add_term(a, n + 1, q);
    g.add_term(b, q, n + 1);
    g.add_term(minus_one, q, q);
    return g;
  }
  if (n <= 3) throw PreconditionError("cubic identity needs n > 3");
  if (p_divides(curve, 1, -3)) {
    const u64 e = n - 3 + 3 * q;
    g.add_term(a, e, 0);
    g.add_term(b, 0, e);
    g.add_term(minus_one, 0, 0);
    return g;
  }
  if (p_divides(curve, 3, -1)) {
    const u64 e = 3 * n - 1 + q;
    const FieldElement a3 = f.pow(a, 3), b3 = f.pow(b, 3);
    BiPoly lin(f);
    lin.add_term(a3, e, 0);
    lin.add_term(b3, 0, e);
    lin.add_term(minus_one, 0, 0);
    g = lin.pow(3);
    g.add_term(f.mul(f.from_int(27), f.mul(a3, b3)), e, e);
    return g;
  }
  throw PreconditionError("cubic identity needs p | n-3 or p | 3n-1");
}

bool frobenius_identity(const FermatCurve& curve, int s) {
  return ring_reduce(frobenius_identity_function(curve, s), curve).is_zero();
}

bool poly_divisibility(u64 l, const UniPoly& b1, u64 m, const UniPoly& b2) {
  if (b1.degree() == 0 || b2.degree() == 0 || b1.is_zero() || b2.is_zero()) {
    throw PreconditionError("divisibility test needs nonconstant polynomials");
  }
  if (l == 0) throw PreconditionError("y-degree must be positive");
  // y^m = y^(m mod l) b1^(m div l) modulo y^l - b1; the remainder of
  // y^m - b2 vanishes only when no y survives and the x-parts agree.
  if (m % l != 0) return false;
  return b1.pow(m / l) == b2;
}

bool classicality_certificate(const std::vector<u64>& orders, u32 p) {
  u64 num = 0, den = 0;
  for (size_t i = 0; i < orders.size(); ++i) {
    for (size_t r = 0; r < i; ++r) {
      if (orders[i] <= orders[r]) throw PreconditionError("orders must be strictly increasing");
      num += p_adic_valuation(orders[i] - orders[r], p);
      den += p_adic_valuation(i - r, p);
    }
  }
  return num == den;
}

bool padic_closed(const std::vector<u64>& orders, u32 p) {
  const std::set<u64> present(orders.begin(), orders.end());
  for (u64 e : orders) {
    for (u64 mu = 0; mu <= e; ++mu) {
      if (binom_mod_p(e, mu, p) != 0 && !present.count(mu)) return false;
    }
  }
  return true;
}

}  // namespace fermat
