#include "fermat/bounds.hpp"

#include <numeric>

#include "fermat/classify.hpp"
#include "fermat/error.hpp"

namespace fermat {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

u64 ceil_sqrt(u128 x) {
  const u64 r = isqrt(x);
  return u128{r} * r == x ? r : r + 1;
}

// (n-1)(n-2), zero for lines and conics.
u128 twice_genus(u64 n) { return n < 3 ? 0 : u128{n - 1} * (n - 2); }

void require_system(int s) {
  if (s < 1 || s > 3) throw ValidationError("linear system degree must be 1, 2 or 3");
}

}  // namespace

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  return neg ? "-" + s : s;
}

Rational::Rational(i128 num, i128 den) : num_(num), den_(den) {
  if (den_ == 0) throw PreconditionError("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const i128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

i128 Rational::floor() const noexcept { return floor_div(num_, den_); }
i128 Rational::ceil() const noexcept { return -floor_div(-num_, den_); }

std::string Rational::to_string() const {
  return den_ == 1 ? fermat::to_string(num_) : fermat::to_string(num_) + "/" + fermat::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

HasseWeilInterval hasse_weil(u64 n, u64 q) {
  const u128 g2 = twice_genus(n);
  const u64 radius = ceil_sqrt(g2 * g2 * q);
  HasseWeilInterval out;
  out.upper = q + 1 + radius;
  out.lower = static_cast<i64>(q + 1) - static_cast<i64>(radius);
  return out;
}

HasseWeilInterval hasse_weil(const FermatCurve& curve) { return hasse_weil(curve.degree(), curve.q()); }

bool within_hasse_weil(u64 n, u64 q, u64 count) {
  const u128 g2 = twice_genus(n);
  const i128 dev = static_cast<i128>(count) - static_cast<i128>(q) - 1;
  return static_cast<u128>(dev * dev) <= g2 * g2 * q;
}

Rational sv_closed_bound(u64 n_, u64 q_, u64 d_, int s_) {
  require_system(s_);
  const i128 n = n_, q = q_, d = d_, s = s_;
  const i128 M = (s + 2) * (s + 1) / 2 - 1;
  const Rational A = Rational((n - s - 1) * s * (s - 1) * (s + 4), 6) +
                     Rational(s * (s - 1) * (s - 2) * (s + 5), 24);
  const i128 B = s * n - M;
  return Rational(n * (n - 3) * (M - 1), 2) + Rational(s * n * (q + M), M) -
         (Rational(3 * n) * A + Rational(d * B)) / Rational(M);
}

Rational sv_closed_bound(const FermatCurve& curve, int s) {
  return sv_closed_bound(curve.degree(), curve.q(), coordinate_zero_count(curve), s);
}

u64 sv_floor_bound(u64 n_, u64 q_, u64 d_, int s) {
  require_system(s);
  if (n_ == 0 || (q_ - 1) % n_ != 0) {
    throw PreconditionError("floor bounds need n | q-1; apply reduce_degree first");
  }
  const i128 n = n_, q = q_, d = d_;
  i128 fl = 0;
  switch (s) {
    case 1:
      fl = floor_div(n + q - d - 1, 2 * n);
      break;
    case 2:
      fl = floor_div(2 * (2 * n + q - d - 1), 5 * n);
      break;
    default:
      fl = floor_div(5 * n + q - d - 1, 3 * n);
      break;
  }
  const i128 v = n * n * fl + d;
  return v < 0 ? 0 : static_cast<u64>(v);
}

u64 sv_floor_bound(const FermatCurve& curve, int s) {
  return sv_floor_bound(curve.degree(), curve.q(), coordinate_zero_count(curve), s);
}

BoundReport bound_report(const FermatCurve& original, std::optional<u64> count) {
  const FermatCurve curve = reduce_degree(original);
  BoundReport r;
  r.curve = original.descriptor();
  r.original_n = original.degree();
  r.n = curve.degree();
  r.q = curve.q();
  r.d = coordinate_zero_count(curve);
  r.hasse_weil = hasse_weil(original);
  r.count = count;
  for (int s = 1; s <= 3; ++s) {
    r.sv_closed.emplace(s, sv_closed_bound(r.n, r.q, r.d, s));
    r.sv_floor.emplace(s, sv_floor_bound(r.n, r.q, r.d, s));
    const auto v = frobenius_classification(curve, s);
    auto& g = r.guards[s];
    g = v.guards;
    if (v.frobenius_nonclassical.value_or(false)) g.push_back("frobenius nonclassical (" + v.frobenius_case + ")");
  }
  if (count) {
    const u64 N = *count;
    r.comparisons["hasse-weil"] = BoundFlags{
        N == r.hasse_weil.upper || static_cast<i64>(N) == r.hasse_weil.lower,
        !within_hasse_weil(original.degree(), r.q, N)};
    for (int s = 1; s <= 3; ++s) {
      const Rational& c = r.sv_closed.at(s);
      r.comparisons["sv-closed-" + std::to_string(s)] =
          BoundFlags{Rational(N) == c, Rational(N) > c};
      const u64 f = r.sv_floor.at(s);
      r.comparisons["sv-floor-" + std::to_string(s)] = BoundFlags{N == f, N > f};
    }
  }
  r.crossover_regime = r.d == 0 && 13 * static_cast<i128>(r.n) < static_cast<i128>(r.q) - 1;
  r.crossover_holds = r.sv_floor.at(3) <= std::min(r.sv_floor.at(1), r.sv_floor.at(2));
  return r;
}

}  // namespace fermat
