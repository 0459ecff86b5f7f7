#include "fermat/series.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fermat/error.hpp"

namespace fermat {

PowerSeries::PowerSeries(Field field, u64 precision)
    : field_(std::move(field)), coeffs_(precision, FieldElement{0}) {}

PowerSeries::PowerSeries(Field field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

PowerSeries PowerSeries::constant(const Field& field, FieldElement c, u64 precision) {
  PowerSeries out(field, precision);
  if (precision > 0) out.coeffs_[0] = c;
  return out;
}

PowerSeries PowerSeries::shifted_variable(const Field& field, FieldElement c, u64 precision) {
  PowerSeries out = constant(field, c, precision);
  if (precision > 1) out.coeffs_[1] = field.one();
  return out;
}

std::optional<u64> PowerSeries::valuation() const {
  for (u64 k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != field_.zero()) return k;
  }
  return std::nullopt;
}

PowerSeries PowerSeries::resized(u64 precision) const {
  PowerSeries out = *this;
  out.coeffs_.resize(precision, field_.zero());
  return out;
}

PowerSeries PowerSeries::scaled(FieldElement c) const {
  PowerSeries out = *this;
  for (auto& e : out.coeffs_) e = field_.mul(e, c);
  return out;
}

PowerSeries PowerSeries::inverse() const {
  const u64 T = precision();
  if (T == 0) return *this;
  if (coeffs_[0] == field_.zero()) throw PreconditionError("series with zero constant term is not invertible");
  PowerSeries out(field_, T);
  const FieldElement c0inv = field_.inv(coeffs_[0]);
  out.coeffs_[0] = c0inv;
  for (u64 k = 1; k < T; ++k) {
    FieldElement acc = field_.zero();
    for (u64 i = 1; i <= k; ++i) {
      if (coeffs_[i] == field_.zero()) continue;
      acc = field_.add(acc, field_.mul(coeffs_[i], out.coeffs_[k - i]));
    }
    out.coeffs_[k] = field_.neg(field_.mul(acc, c0inv));
  }
  return out;
}

PowerSeries PowerSeries::pow(u64 e) const {
  PowerSeries result = constant(field_, field_.one(), precision());
  PowerSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw PreconditionError("series over different fields");
}

}  // namespace

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  require_same_field(a.field_, b.field_);
  PowerSeries out(a.field_, std::min(a.precision(), b.precision()));
  for (u64 k = 0; k < out.precision(); ++k) out.coeffs_[k] = a.field_.add(a.coeffs_[k], b.coeffs_[k]);
  return out;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  require_same_field(a.field_, b.field_);
  PowerSeries out(a.field_, std::min(a.precision(), b.precision()));
  for (u64 k = 0; k < out.precision(); ++k) out.coeffs_[k] = a.field_.sub(a.coeffs_[k], b.coeffs_[k]);
  return out;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  require_same_field(a.field_, b.field_);
  const Field& f = a.field_;
  const u64 T = std::min(a.precision(), b.precision());
  PowerSeries out(f, T);
  for (u64 i = 0; i < T; ++i) {
    if (a.coeffs_[i] == f.zero()) continue;
    for (u64 j = 0; i + j < T; ++j) {
      if (b.coeffs_[j] == f.zero()) continue;
      out.coeffs_[i + j] = f.add(out.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return out;
}

namespace {

// s^e for every e in `exps`, built incrementally from the previous power.
std::map<u64, PowerSeries> powers(const PowerSeries& s, const std::set<u64>& exps) {
  std::map<u64, PowerSeries> out;
  u64 prev = 0;
  PowerSeries cur = PowerSeries::constant(s.field(), s.field().one(), s.precision());
  for (u64 e : exps) {
    cur = cur * s.pow(e - prev);
    prev = e;
    out.emplace(e, cur);
  }
  return out;
}

}  // namespace

PowerSeries evaluate(const BiPoly& f, const PowerSeries& x, const PowerSeries& y) {
  require_same_field(f.field(), x.field());
  require_same_field(f.field(), y.field());
  const u64 T = std::min(x.precision(), y.precision());
  std::set<u64> xe, ye;
  for (const auto& [k, c] : f.terms()) {
    xe.insert(k.first);
    ye.insert(k.second);
  }
  const auto xp = powers(x.resized(T), xe);
  const auto yp = powers(y.resized(T), ye);
  // Group by y-exponent: sum_j (sum_i c_ij x^i) y^j.
  std::map<u64, PowerSeries> by_y;
  for (const auto& [k, c] : f.terms()) {
    auto [it, fresh] = by_y.try_emplace(k.second, f.field(), T);
    it->second = it->second + xp.at(k.first).scaled(c);
  }
  PowerSeries out(f.field(), T);
  for (const auto& [j, cx] : by_y) out = out + cx * yp.at(j);
  return out;
}

PowerSeries BranchSeries::x() const {
  return swapped ? series : PowerSeries::shifted_variable(field, center.x, precision());
}

PowerSeries BranchSeries::y() const {
  return swapped ? PowerSeries::shifted_variable(field, center.y, precision()) : series;
}

BranchSeries branch_expansion(const BiPoly& f_in, AffinePoint center, u64 precision) {
  const Field& field = f_in.field();
  if (precision == 0) throw PreconditionError("branch precision must be positive");
  if (f_in.eval(center.x, center.y) != field.zero()) {
    throw PreconditionError("branch center is not on the curve");
  }
  bool swapped = false;
  BiPoly f = f_in;
  AffinePoint c = center;
  if (f.derivative_y().eval(c.x, c.y) == field.zero()) {
    if (f.derivative_x().eval(c.x, c.y) == field.zero()) {
      throw PreconditionError("branch center is a singular point");
    }
    swapped = true;
    f = f.swapped();
    std::swap(c.x, c.y);
  }
  const BiPoly fy = f.derivative_y();

  // y(t) solves f(u + t, y) = 0; each Newton step doubles the correct prefix.
  PowerSeries y = PowerSeries::constant(field, c.y, 1);
  u64 prec = 1;
  while (prec < precision) {
    prec = std::min(2 * prec, precision);
    y = y.resized(prec);
    const PowerSeries x = PowerSeries::shifted_variable(field, c.x, prec);
    const PowerSeries residual = evaluate(f, x, y);
    const PowerSeries slope = evaluate(fy, x, y);
    y = y - residual * slope.inverse();
  }
  const PowerSeries x = PowerSeries::shifted_variable(field, c.x, precision);
  if (!evaluate(f, x, y).is_zero()) throw InternalMismatch("branch expansion residual is nonzero");
  return BranchSeries{field, center, swapped, y};
}

}  // namespace fermat
