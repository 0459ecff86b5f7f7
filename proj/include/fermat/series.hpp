#pragma once

// Truncated power series over a finite field and branch expansions of plane
// curves at nonsingular points.

#include <optional>
#include <vector>

#include "fermat/gfield.hpp"
#include "fermat/poly.hpp"

namespace fermat {

/// sum_{k < precision} c_k t^k, known modulo t^precision.
class PowerSeries {
 public:
  PowerSeries(Field field, u64 precision);
  PowerSeries(Field field, std::vector<FieldElement> coeffs);

  static PowerSeries constant(const Field& field, FieldElement c, u64 precision);
  /// c + t.
  static PowerSeries shifted_variable(const Field& field, FieldElement c, u64 precision);

  const Field& field() const noexcept { return field_; }
  u64 precision() const noexcept { return coeffs_.size(); }
  FieldElement operator[](u64 k) const { return coeffs_.at(k); }
  const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
  /// Index of the first nonzero coefficient; nullopt if zero to full precision.
  std::optional<u64> valuation() const;
  bool is_zero() const { return !valuation(); }

  /// Truncates or zero-pads to `precision`.
  PowerSeries resized(u64 precision) const;
  PowerSeries scaled(FieldElement c) const;
  /// Throws PreconditionError if the constant term is zero.
  PowerSeries inverse() const;
  PowerSeries pow(u64 e) const;

  /// Binary operations take the smaller precision.
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

 private:
  Field field_;
  std::vector<FieldElement> coeffs_;
};

/// f(X(t), Y(t)) to the smaller of the two precisions.
PowerSeries evaluate(const BiPoly& f, const PowerSeries& x, const PowerSeries& y);

struct AffinePoint {
  FieldElement x, y;
};

/// A branch of f = 0 centered at `center`: with `swapped` false,
/// x = u + t and y = series(t); with `swapped` true, y = v + t and x = series(t).
struct BranchSeries {
  Field field;
  AffinePoint center;
  bool swapped = false;
  PowerSeries series;

  u64 precision() const noexcept { return series.precision(); }
  PowerSeries x() const;
  PowerSeries y() const;
};

/// Newton iteration with precision doubling. Throws PreconditionError when the
/// center is off the curve or singular; the result satisfies
/// f(x(t), y(t)) = 0 mod t^precision.
BranchSeries branch_expansion(const BiPoly& f, AffinePoint center, u64 precision);

}  // namespace fermat
