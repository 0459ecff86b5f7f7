#pragma once

// Closed-form point counts for the cubic-nonclassical Fermat families and for
// X^n + Y^n + Z^n = 0 over GF(q^m) with n | (q^m - 1)/(q - 1).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/curve.hpp"

namespace fermat {

struct CubicSubcount {
  u64 cubic_points = 0;  // projective points of aX^3 + bY^3 = Z^3
  u64 k = 0;             // those with a zero coordinate
};

/// Enumerates aX^3 + bY^3 = Z^3 over `field`. Throws PreconditionError when
/// p <= 3 or a, b is zero.
CubicSubcount cubic_subcount(const Field& field, FieldElement a, FieldElement b);
/// Integer coefficients reduced into GF(p^r).
CubicSubcount cubic_subcount(i64 a, i64 b, u32 p, unsigned r);

/// Exact count for curves with p | n-3, n = 3(q-1)/(p^r-1), a, b in GF(p^r),
/// or with p | 3n-1, n = (q-1)/(3(p^r-1)), a^3, b^3 in GF(p^r). Throws
/// PreconditionError for any other curve.
PointCount closed_form_count(const FermatCurve& curve);

enum class Applicability { yes, no, inconclusive };
std::string to_string(Applicability a);

struct KSParameters {
  u64 m = 0;
  u64 cofactor = 0;  // (q^m - 1)/(n (q - 1))
  u64 t = 0;         // q mod cofactor
  u64 l = 0;         // gcd(cofactor, t + 1)
  u64 exponent = 0;  // (t - 1)(cofactor - l)
  Applicability applicable = Applicability::inconclusive;
};

/// Count of X^n + Y^n + Z^n = 0 over GF(q^m). Throws PreconditionError unless
/// q is an odd prime power, m > 1, n | (q^m - 1)/(q - 1) and the cofactor is at
/// least 2 (so that a residue 0 < t < cofactor exists).
std::pair<PointCount, KSParameters> ks_count(u64 n, u64 q, u64 m);

/// The characteristic bound for ks_count, in log form with outward rounding:
/// p > (2 sin(pi / (2 L))^(-1/(t+1)) + 1)^exponent.
Applicability ks_applicability(u32 p, u64 cofactor, u64 t, u64 exponent);

/// ks_count for every proper subfield GF(p^r) over which the curve fits, when
/// the curve is isomorphic to X^n + Y^n + Z^n = 0 over GF(q) (a, b and -1 are
/// n-th powers). Empty otherwise.
std::vector<std::pair<PointCount, KSParameters>> ks_counts_for_curve(const FermatCurve& curve);

}  // namespace fermat
