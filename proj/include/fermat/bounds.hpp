#pragma once

// Upper bounds on the number of GF(q)-points of a Fermat curve: Hasse-Weil,
// the closed-form Stohr-Voloch bound for the systems of lines, conics and
// cubics, and the floor forms that use the congruence N = d (mod n^2).

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermat/curve.hpp"

namespace fermat {

/// Exact fraction with a positive denominator in lowest terms.
class Rational {
 public:
  Rational(i128 num = 0, i128 den = 1);

  i128 num() const noexcept { return num_; }
  i128 den() const noexcept { return den_; }
  i128 floor() const noexcept;
  i128 ceil() const noexcept;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  i128 num_, den_;
};

std::string to_string(i128 v);

struct HasseWeilInterval {
  i64 lower = 0;  // may be negative
  u64 upper = 0;
  u64 lower_clamped() const noexcept { return lower < 0 ? 0 : static_cast<u64>(lower); }
};

/// q + 1 -+ (n-1)(n-2) sqrt(q), with the square root rounded outward when q is
/// not a square.
HasseWeilInterval hasse_weil(const FermatCurve& curve);
HasseWeilInterval hasse_weil(u64 n, u64 q);
/// Exact test |N - (q+1)| <= (n-1)(n-2) sqrt(q), without rounding.
bool within_hasse_weil(u64 n, u64 q, u64 count);

/// n(n-3)(M-1)/2 + s n (q+M)/M - (3nA + dB)/M with M = binom(s+2, 2) - 1,
/// A = ((n-s-1)s(s-1)(s+4) + s(s-1)(s-2)(s+5)/4)/6 and B = sn - M.
Rational sv_closed_bound(u64 n, u64 q, u64 d, int s);
/// Uses the curve's d; the bound is only valid when the curve is Frobenius
/// classical for the system, which this function does not check.
Rational sv_closed_bound(const FermatCurve& curve, int s);

/// n^2 floor(X) + d with X = (n+q-d-1)/(2n), 2(2n+q-d-1)/(5n) or
/// (5n+q-d-1)/(3n) for s = 1, 2, 3. Throws PreconditionError if n does not
/// divide q - 1 (see reduce_degree).
u64 sv_floor_bound(u64 n, u64 q, u64 d, int s);
u64 sv_floor_bound(const FermatCurve& curve, int s);

struct BoundFlags {
  bool attained = false;
  bool violated = false;
};

struct BoundReport {
  std::string curve;
  u64 n = 0;          // degree the bounds were computed for (after reduction)
  u64 original_n = 0;
  u64 q = 0;
  u64 d = 0;
  HasseWeilInterval hasse_weil;
  std::map<int, Rational> sv_closed;
  std::map<int, u64> sv_floor;
  /// Per s: reasons the Stohr-Voloch bounds may not apply (Frobenius
  /// nonclassical, undetermined classification).
  std::map<int, std::vector<std::string>> guards;
  std::optional<u64> count;
  /// Keyed "hasse-weil", "sv-closed-<s>", "sv-floor-<s>"; present with count.
  std::map<std::string, BoundFlags> comparisons;
  /// d == 0 and 13n < q - d - 1; then the cubic floor bound is expected to be
  /// the smallest.
  bool crossover_regime = false;
  bool crossover_holds = false;
};

/// All bounds for the curve reduced to degree gcd(n, q-1).
BoundReport bound_report(const FermatCurve& curve, std::optional<u64> count = std::nullopt);

}  // namespace fermat
