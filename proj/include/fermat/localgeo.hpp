#pragma once

// Local geometry of plane curves at a point: order sequences with respect to
// curves of degree s, osculating curves, intersection multiplicities, and the
// exact ring identities that decide Frobenius nonclassicality.

#include <optional>
#include <string>
#include <vector>

#include "fermat/curve.hpp"
#include "fermat/series.hpp"

namespace fermat {

inline constexpr u64 kDefaultPrecisionCeiling = u64{1} << 13;

struct OrderSequence {
  int s = 1;
  std::vector<u64> orders;  // M + 1 strictly increasing values
  u64 precision_used = 0;
};

/// A point together with the field it is defined over.
struct LocalPoint {
  Field field;
  AffinePoint point;
};

/// Orders at P of f = 0 with respect to the curves of degree s: the distinct
/// valuations along the branch of the span of x^i y^j, i + j <= s. Starts at
/// `precision` and doubles up to `ceiling`; throws PrecisionExhausted beyond.
OrderSequence order_sequence(const BiPoly& f, AffinePoint P, int s, u64 precision, u64 ceiling);

/// max(3n, p^ceil(h/2)) + 16.
u64 default_precision(const FermatCurve& curve);

/// a x^n + b y^n - 1 with coefficients carried into `ambient`; throws
/// PreconditionError when a or b does not lie in it.
BiPoly fermat_equation(const FermatCurve& curve, const Field& ambient);

/// Default precision when `precision` is empty; doubling stops at `ceiling`.
OrderSequence order_sequence(const FermatCurve& curve, const LocalPoint& P, int s,
                             std::optional<u64> precision = std::nullopt,
                             u64 ceiling = kDefaultPrecisionCeiling);

/// Degree K of the field generic points are drawn from. K runs over multiples
/// of the degree of GF(p)(a, b) that do not divide h, with p^K within the order
/// cap; the least gcd(n, p^K-1) is preferred, then p^K > (3n+3)^2, then the
/// least K. Falls back to h.
unsigned generic_extension_degree(const FermatCurve& curve);

/// A pseudo-random affine point with xy != 0 over GF(p^K), deterministic in
/// `seed`. Its x-coordinate avoids GF(p^gcd(K, h)).
LocalPoint sample_generic_point(const FermatCurve& curve, u64 seed);

/// (u : 0 : 1) with a u^n = 1, over the least GF(p^(kh)) containing such u.
LocalPoint axis_point(const FermatCurve& curve);

struct Multiplicity {
  u64 value = 0;
  bool at_least = false;  // C vanished to full precision: the multiplicity is >= value
};

std::string to_string(const Multiplicity& m);

/// Valuation of C along the branch of G at P. Throws PreconditionError when P
/// is off either curve or singular on G.
Multiplicity intersection_multiplicity(const BiPoly& G, const BiPoly& C, AffinePoint P, u64 precision);

/// The osculating curve of degree s at P = (u : v : 1), uv != 0, over P's field.
/// s = 3 needs p | (n-3)(3n-1); s = 2 needs n = q-1 and a + b = 1. The
/// multiplicity (>= p, resp. >= q) is checked before returning.
BiPoly osculating_curve(const FermatCurve& curve, const LocalPoint& P, int s);

/// The function whose vanishing modulo the curve decides Frobenius
/// nonclassicality for the given system. Throws PreconditionError when its
/// divisibility hypothesis fails.
BiPoly frobenius_identity_function(const FermatCurve& curve, int s);
/// True iff frobenius_identity_function reduces to zero on the curve.
bool frobenius_identity(const FermatCurve& curve, int s);

/// Whether y^l - b1(x) divides y^m - b2(x), decided by reducing y^m modulo
/// y^l - b1. Throws PreconditionError when b1 or b2 is constant.
bool poly_divisibility(u64 l, const UniPoly& b1, u64 m, const UniPoly& b2);

/// prod_{r < i} (j_i - j_r)/(i - r) is nonzero mod p.
bool classicality_certificate(const std::vector<u64>& orders, u32 p);

/// Every mu with binom(e, mu) != 0 mod p, e an order, is an order.
bool padic_closed(const std::vector<u64>& orders, u32 p);

}  // namespace fermat
