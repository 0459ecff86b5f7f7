#pragma once

// Fermat curves aX^n + bY^n = Z^n over GF(q), their rational points, and the
// affine coordinate ring GF(q)[x, y] / (a x^n + b y^n - 1).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/gfield.hpp"
#include "fermat/poly.hpp"

namespace fermat {

/// Degrees above this are rejected; with q <= 2^22 it keeps every count,
/// bound numerator and Hasse-Weil radicand inside 128-bit intermediates and
/// every reported value inside 64 bits.
inline constexpr u64 kMaxCurveDegree = u64{1} << 20;

class FermatCurve {
 public:
  /// Throws ValidationError when a or b is zero, p | n, n == 0 or n is too large.
  FermatCurve(Field field, u64 n, FieldElement a, FieldElement b);

  const Field& field() const noexcept { return field_; }
  u64 degree() const noexcept { return n_; }
  FieldElement a() const noexcept { return a_; }
  FieldElement b() const noexcept { return b_; }
  u32 p() const noexcept { return field_.characteristic(); }
  unsigned h() const noexcept { return field_.degree(); }
  u64 q() const noexcept { return field_.order(); }

  /// "p=..,h=..,n=..,a=[..],b=[..]".
  std::string descriptor() const;
  /// a x^n + b y^n - 1.
  BiPoly affine_equation() const;

 private:
  Field field_;
  u64 n_;
  FieldElement a_, b_;
};

FermatCurve make_curve(u32 p, unsigned h, u64 n, i64 a, i64 b);
FermatCurve make_curve(const Field& field, u64 n, FieldElement a, FieldElement b);
/// Parses "p=13,h=2,n=8,a=-1,b=[12,0]" (keys in any order; h defaults to 1).
FermatCurve parse_curve(std::string_view descriptor);

enum class CountMethod {
  enumeration,
  norm_cubic,        // norm fibration over the cubic aX^3 + bY^3 = Z^3 on a subfield
  third_norm,        // n = (q-1)/(3(p^r-1)), a^3, b^3 in the subfield
  korchmaros_szonyi,
};

std::string to_string(CountMethod m);

struct CountWitnesses {
  std::optional<unsigned> r;
  std::optional<u64> cubic_points;
  std::optional<u64> k;
  std::optional<u64> m;
  std::optional<u64> t;
  std::optional<u64> l;
  std::optional<std::string> applicable;
  std::optional<unsigned> subfield_mod3;  // p^r mod 3
  bool normalized = false;
};

struct PointCount {
  u64 value = 0;
  CountMethod method = CountMethod::enumeration;
  CountWitnesses witnesses;
};

/// Exact number of projective GF(q)-points, by summing the number of n-th
/// roots of (1 - a x^n)/b over x, plus one point (x : 1 : 0) per root of
/// a x^n + b = 0. `threads` > 1 splits the x range; the result does not depend
/// on the split.
PointCount count_points(const FermatCurve& curve, unsigned threads = 1);

/// Number of GF(q)-points with a zero coordinate.
u64 coordinate_zero_count(const FermatCurve& curve);

/// The curve of degree gcd(n, q-1) with the same coefficients; it has the same
/// number of GF(q)-points.
FermatCurve reduce_degree(const FermatCurve& curve);

/// An element of GF(q)[x, y] / (a x^n + b y^n - 1), kept in the canonical form
/// sum_{j < n} c_j(x) y^j.
class RingElement {
 public:
  explicit RingElement(const FermatCurve& curve);

  const FermatCurve& curve() const noexcept { return curve_; }
  /// Coefficient of y^j, j < n.
  const UniPoly& slot(u64 j) const { return slots_.at(j); }
  bool is_zero() const noexcept;
  BiPoly to_bipoly() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  friend RingElement ring_reduce(const BiPoly& poly, const FermatCurve& curve);
  // Adds c(x) * y^j, folding y^n into ((1 - a x^n)/b).
  void accumulate(const UniPoly& c, u64 j);

  FermatCurve curve_;
  std::vector<UniPoly> slots_;
};

/// Canonical representative of `poly` modulo the curve relation.
RingElement ring_reduce(const BiPoly& poly, const FermatCurve& curve);

/// ((1 - a x^n)/b)^k, expanded with Lucas binomials.
UniPoly relation_power(const FermatCurve& curve, u64 k);

}  // namespace fermat
