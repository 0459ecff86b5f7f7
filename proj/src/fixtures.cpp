#include "fermat/fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "fermat/error.hpp"

namespace fermat {

namespace {

// c * s^e * x^i * y^j with an integer c.
struct Coef {
  i64 c;
  int e;
  u64 i, j;
};

BiPoly build(const Field& f, FieldElement s, const std::vector<Coef>& coefs) {
  BiPoly out(f);
  for (const Coef& k : coefs) out.add_term(f.mul(f.from_int(k.c), f.pow(s, k.e)), k.i, k.j);
  return out;
}

// The defining equation of s_i as s^e = c.
struct Root {
  u64 e;
  i64 num, den;
};

Root defining(int i) {
  switch (i) {
    case 1:
      return {2, 2, 1};
    case 2:
      return {1, 4, 1};
    case 3:
      return {3, 1, 4};
    default:
      return {2, 1, 8};
  }
}

}  // namespace

OsculationFixture osculation_fixture(int i, u32 p, size_t root) {
  if (i < 1 || i > 4) throw ValidationError("fixture index must be 1..4");
  if (p <= 3) throw ValidationError("fixtures need p > 3");
  const Root r = defining(i);
  for (unsigned k = 1;; ++k) {
    if (!checked_pow(p, k, Field::kMaxOrder)) break;
    const Field f = build_field(p, k);
    const FieldElement c = f.div(f.from_int(r.num), f.from_int(r.den));
    const auto s0 = f.nth_root(c, r.e);
    if (!s0) continue;

    OsculationFixture fx{i, f, {}, BiPoly(f), BiPoly(f), {}};
    const u64 group = f.order() - 1;
    const u64 count = std::gcd(r.e, group);
    for (u64 t = 0; t < count; ++t) fx.parameters.push_back(f.mul(*s0, f.exp(group / count * t)));
    if (root >= fx.parameters.size()) throw ValidationError("fixture root index out of range");
    const FieldElement s = fx.parameters[root];
    std::rotate(fx.parameters.begin(), fx.parameters.begin() + static_cast<std::ptrdiff_t>(root),
                fx.parameters.end());

    switch (i) {
      case 1:
        fx.G = build(f, s, {{1, 0, 2, 0}, {1, 0, 0, 2}, {-1, 0, 2, 2}});
        fx.C = build(f, s, {{1, 0, 3, 0}, {1677, 0, 2, 1}, {-1194, 1, 2, 0}, {1677, 0, 1, 2},
                            {-1848, 1, 1, 1}, {996, 0, 1, 0}, {1, 0, 0, 3}, {-1194, 1, 0, 2},
                            {996, 0, 0, 1}, {-232, 1, 0, 0}});
        break;
      case 2:
        fx.G = build(f, s, {{1, 0, 0, 2}, {1, 0, 2, 0}, {1, 0, 2, 2}, {-2, 0, 2, 1},
                            {-2, 0, 1, 2}, {-2, 0, 1, 1}});
        fx.C = build(f, s, {{1, 0, 3, 0}, {543, 0, 2, 1}, {-672, 0, 2, 0}, {543, 0, 1, 2},
                            {2112, 0, 1, 1}, {-8448, 0, 1, 0}, {1, 0, 0, 3}, {-672, 0, 0, 2},
                            {-8448, 0, 0, 1}, {-14336, 0, 0, 0}});
        break;
      case 3:
        fx.G = build(f, s, {{1, 0, 6, 0}, {1, 0, 0, 6}, {1, 0, 0, 0}, {-2, 0, 3, 3},
                            {-2, 0, 3, 0}, {-2, 0, 0, 3}});
        fx.C = build(f, s, {{13, 0, 3, 0}, {27, 0, 2, 1}, {-27, 1, 2, 0}, {27, 0, 1, 2},
                            {-42, 1, 1, 1}, {13, 0, 0, 3}, {-27, 1, 0, 2}, {4, 0, 0, 0}});
        break;
      default: {
        const BiPoly base = build(f, s, {{1, 0, 2, 0}, {1, 0, 0, 2}, {-1, 0, 0, 0}});
        fx.G = base.pow(3) + build(f, s, {{27, 0, 2, 2}});
        fx.C = build(f, s, {{532, 0, 3, 0}, {804, 0, 2, 1}, {-6216, 1, 2, 0}, {804, 0, 1, 2},
                            {-9120, 1, 1, 1}, {2841, 0, 1, 0}, {532, 0, 0, 3}, {-6216, 1, 0, 2},
                            {2841, 0, 0, 1}, {-3322, 1, 0, 0}});
        break;
      }
    }
    fx.P = AffinePoint{s, s};
    return fx;
  }
  throw ValidationError("no field within the order cap contains the fixture parameter");
}

}  // namespace fermat
