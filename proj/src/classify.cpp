#include "fermat/classify.hpp"

#include "fermat/error.hpp"

namespace fermat {

std::optional<unsigned> subfield_parameter(u64 n, u32 p, unsigned h, SubfieldShape shape) {
  const auto q = checked_pow(p, h);
  if (!q || n == 0) return std::nullopt;
  const u128 big = *q - 1;
  for (u64 r : divisors(h)) {
    if (r == h) break;
    const u128 small = *checked_pow(p, r) - 1;
    const u128 lhs = u128{n} * small;
    bool match = false;
    switch (shape) {
      case SubfieldShape::linear:
        match = lhs == big;
        break;
      case SubfieldShape::twice:
        match = lhs == 2 * big;
        break;
      case SubfieldShape::half:
        match = 2 * lhs == big;
        break;
      case SubfieldShape::triple:
        match = lhs == 3 * big;
        break;
      case SubfieldShape::third:
        match = 3 * lhs == big;
        break;
    }
    if (match) return static_cast<unsigned>(r);
  }
  return std::nullopt;
}

namespace {

void require_system(int s) {
  if (s < 1 || s > 3) throw ValidationError("linear system degree must be 1, 2 or 3");
}

// n + offset (mod p), for offsets that may make the factor negative.
bool p_divides(const FermatCurve& c, i64 mult, i64 offset) {
  const i64 p = c.p();
  const i64 v = static_cast<i64>((static_cast<i128>(c.degree() % p) * mult + offset) % p);
  return v == 0;
}

struct Factor {
  i64 mult, offset;
  const char* label;
};

}  // namespace

NonclassicalityResult nonclassicality(const FermatCurve& curve, int s) {
  require_system(s);
  NonclassicalityResult out;
  out.s = s;
  if (curve.degree() <= static_cast<u64>(s)) out.guards.push_back("n <= " + std::to_string(s));
  if (s == 2 && curve.p() <= 5) out.guards.push_back("p <= 5");
  if (s == 3 && curve.p() <= 11) out.guards.push_back("p <= 11");

  std::vector<Factor> factors;
  if (s == 1) {
    factors = {{1, -1, "p | n-1 [external criterion]"}};
  } else {
    factors = {{1, -2, "p | n-2"}, {1, -1, "p | n-1"}, {1, 1, "p | n+1"}, {2, -1, "p | 2n-1"}};
    if (s == 3) {
      factors.push_back({1, -3, "p | n-3"});
      factors.push_back({3, -1, "p | 3n-1"});
    }
  }
  bool matched = false;
  for (const auto& f : factors) {
    if (p_divides(curve, f.mult, f.offset)) {
      matched = true;
      out.reason = f.label;
      break;
    }
  }
  if (!out.guards.empty()) {
    out.reason = "indeterminate: outside hypotheses";
    return out;
  }
  out.nonclassical = matched;
  if (!matched) out.reason = "no factor divisible by p";
  return out;
}

namespace {

bool in_subfield(const FermatCurve& c, FieldElement e, unsigned r, unsigned power) {
  return lies_in_subfield(c.field(), c.field().pow(e, power), r);
}

struct CaseCheck {
  SubfieldShape shape;
  unsigned coefficient_power;
};

std::optional<unsigned> match_norm_case(const FermatCurve& c, const CaseCheck& k) {
  const auto r = subfield_parameter(c.degree(), c.p(), c.h(), k.shape);
  if (!r) return std::nullopt;
  if (!in_subfield(c, c.a(), *r, k.coefficient_power) ||
      !in_subfield(c, c.b(), *r, k.coefficient_power)) {
    return std::nullopt;
  }
  return r;
}

}  // namespace

ClassificationVerdict frobenius_classification(const FermatCurve& curve, int s) {
  require_system(s);
  const auto nc = nonclassicality(curve, s);
  ClassificationVerdict v;
  v.system = s;
  v.nonclassical = nc.nonclassical;
  v.reason = nc.reason;
  v.guards = nc.guards;

  if (s == 3 && v.guards.empty()) {
    const auto conic = frobenius_classification(curve, 2);
    if (conic.frobenius_nonclassical.value_or(true)) {
      v.guards.push_back("frobenius nonclassical w.r.t. conics");
    }
  }
  if (!v.guards.empty()) {
    v.frobenius_case = "indeterminate";
    return v;
  }

  auto set = [&](const char* tag, std::optional<unsigned> r) {
    v.frobenius_nonclassical = true;
    v.frobenius_case = tag;
    v.witness_r = r;
  };

  if (s == 1) {
    if (auto r = match_norm_case(curve, {SubfieldShape::linear, 1})) set("sigma1-norm", r);
  } else if (s == 2) {
    const Field& f = curve.field();
    if (p_divides(curve, 1, -1)) {
      set("sigma2-p-divides-n-1", std::nullopt);
    } else if (auto r = p_divides(curve, 1, -2)
                            ? match_norm_case(curve, {SubfieldShape::twice, 1})
                            : std::nullopt) {
      set("sigma2-twice-norm", r);
    } else if (auto r2 = p_divides(curve, 2, -1)
                             ? match_norm_case(curve, {SubfieldShape::half, 2})
                             : std::nullopt) {
      set("sigma2-half-norm", r2);
    } else if (curve.q() == curve.degree() + 1 && f.add(curve.a(), curve.b()) == f.one()) {
      set("sigma2-affine-sum", std::nullopt);
    }
  } else {
    if (p_divides(curve, 1, -3)) {
      if (auto r = match_norm_case(curve, {SubfieldShape::triple, 1})) set("sigma3-triple-norm", r);
    } else if (p_divides(curve, 3, -1)) {
      if (auto r = match_norm_case(curve, {SubfieldShape::third, 3})) set("sigma3-third-norm", r);
    }
  }
  if (!v.frobenius_nonclassical) {
    v.frobenius_nonclassical = false;
    v.frobenius_case = "classical";
  }
  return v;
}

}  // namespace fermat
