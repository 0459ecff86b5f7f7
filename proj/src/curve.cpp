#include "fermat/curve.hpp"

#include <charconv>
#include <map>
#include <numeric>
#include <thread>

#include "fermat/error.hpp"

namespace fermat {

FermatCurve::FermatCurve(Field field, u64 n, FieldElement a, FieldElement b)
    : field_(std::move(field)), n_(n), a_(a), b_(b) {
  if (n_ == 0) throw ValidationError("curve degree must be positive");
  if (n_ > kMaxCurveDegree) {
    throw ValidationError("curve degree " + std::to_string(n_) + " exceeds the ceiling 2^20");
  }
  if (n_ % field_.characteristic() == 0) {
    throw ValidationError("p = " + std::to_string(field_.characteristic()) + " divides n = " +
                          std::to_string(n_));
  }
  if (a_ == field_.zero() || b_ == field_.zero()) {
    throw ValidationError("curve coefficients a and b must be nonzero");
  }
}

std::string FermatCurve::descriptor() const {
  return "p=" + std::to_string(p()) + ",h=" + std::to_string(h()) + ",n=" + std::to_string(n_) +
         ",a=" + field_.serialize(a_) + ",b=" + field_.serialize(b_);
}

BiPoly FermatCurve::affine_equation() const {
  BiPoly f(field_);
  f.add_term(a_, n_, 0);
  f.add_term(b_, 0, n_);
  f.add_term(field_.neg(field_.one()), 0, 0);
  return f;
}

FermatCurve make_curve(u32 p, unsigned h, u64 n, i64 a, i64 b) {
  const Field f = build_field(p, h);
  return FermatCurve(f, n, f.from_int(a), f.from_int(b));
}

FermatCurve make_curve(const Field& field, u64 n, FieldElement a, FieldElement b) {
  return FermatCurve(field, n, a, b);
}

namespace {

u64 parse_u64(std::string_view s, std::string_view key) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed value for '" + std::string(key) + "': '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

FermatCurve parse_curve(std::string_view descriptor) {
  // Split on commas that are not inside brackets.
  std::map<std::string, std::string, std::less<>> kv;
  int depth = 0;
  size_t start = 0;
  auto flush = [&](size_t end) {
    std::string_view part = descriptor.substr(start, end - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) return;
    const size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("malformed descriptor entry '" + std::string(part) + "'");
    }
    std::string key(part.substr(0, eq));
    if (!kv.emplace(key, std::string(part.substr(eq + 1))).second) {
      throw ValidationError("duplicate descriptor key '" + key + "'");
    }
  };
  for (size_t i = 0; i < descriptor.size(); ++i) {
    if (descriptor[i] == '[') ++depth;
    if (descriptor[i] == ']') --depth;
    if (descriptor[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(descriptor.size());

  for (const auto& [k, v] : kv) {
    if (k != "p" && k != "h" && k != "n" && k != "a" && k != "b") {
      throw ValidationError("unknown descriptor key '" + k + "'");
    }
  }
  for (const char* required : {"p", "n", "a", "b"}) {
    if (!kv.count(required)) {
      throw ValidationError(std::string("descriptor is missing '") + required + "'");
    }
  }
  const u64 p = parse_u64(kv.at("p"), "p");
  const u64 h = kv.count("h") ? parse_u64(kv.at("h"), "h") : 1;
  if (p > UINT32_MAX || h > 64) throw ValidationError("field parameters out of range");
  const Field f = build_field(static_cast<u32>(p), static_cast<unsigned>(h));
  return FermatCurve(f, parse_u64(kv.at("n"), "n"), f.parse_element(kv.at("a")),
                     f.parse_element(kv.at("b")));
}

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::enumeration:
      return "enumeration";
    case CountMethod::norm_cubic:
      return "norm-cubic";
    case CountMethod::third_norm:
      return "third-norm";
    case CountMethod::korchmaros_szonyi:
      return "korchmaros-szonyi";
  }
  return "unknown";
}

namespace {

u64 affine_count(const FermatCurve& c, u64 begin, u64 end) {
  const Field& f = c.field();
  const FieldElement binv = f.inv(c.b());
  const FieldElement one = f.one();
  u64 total = 0;
  for (u64 idx = begin; idx < end; ++idx) {
    const FieldElement x{static_cast<u32>(idx)};
    const FieldElement rhs = f.mul(f.sub(one, f.mul(c.a(), f.pow(x, c.degree()))), binv);
    total += f.nth_root_count(rhs, c.degree());
  }
  return total;
}

}  // namespace

PointCount count_points(const FermatCurve& curve, unsigned threads) {
  const Field& f = curve.field();
  const u64 q = curve.q();
  u64 affine = 0;
  if (threads <= 1 || q < 4096) {
    affine = affine_count(curve, 0, q);
  } else {
    std::vector<u64> partial(threads, 0);
    std::vector<std::thread> workers;
    const u64 chunk = (q + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const u64 begin = std::min(q, w * chunk), end = std::min(q, begin + chunk);
      workers.emplace_back([&, w, begin, end] { partial[w] = affine_count(curve, begin, end); });
    }
    for (auto& t : workers) t.join();
    affine = std::accumulate(partial.begin(), partial.end(), u64{0});
  }
  const u64 at_infinity = f.nth_root_count(f.neg(f.div(curve.b(), curve.a())), curve.degree());
  return PointCount{affine + at_infinity, CountMethod::enumeration, {}};
}

u64 coordinate_zero_count(const FermatCurve& curve) {
  const Field& f = curve.field();
  const u64 n = curve.degree();
  return f.nth_root_count(f.inv(curve.b()), n)                      // X = 0
         + f.nth_root_count(f.inv(curve.a()), n)                    // Y = 0
         + f.nth_root_count(f.neg(f.div(curve.b(), curve.a())), n);  // Z = 0
}

FermatCurve reduce_degree(const FermatCurve& curve) {
  return FermatCurve(curve.field(), std::gcd(curve.degree(), curve.q() - 1), curve.a(), curve.b());
}

UniPoly relation_power(const FermatCurve& curve, u64 k) {
  const Field& f = curve.field();
  const u32 p = f.characteristic();
  const FieldElement binv = f.inv(curve.b());
  const FieldElement lead = f.neg(f.mul(curve.a(), binv));  // coefficient of x^n in beta
  std::vector<Term> terms;
  // beta^k = sum_i binom(k, i) binv^(k-i) lead^i x^(n i)
  for (u64 i = 0; i <= k; ++i) {
    const u32 binom = binom_mod_p(k, i, p);
    if (binom == 0) continue;
    const FieldElement c =
        f.mul(f.from_int(binom), f.mul(f.pow(binv, k - i), f.pow(lead, i)));
    terms.push_back(Term{i * curve.degree(), c});
  }
  return UniPoly(f, std::move(terms));
}

RingElement::RingElement(const FermatCurve& curve)
    : curve_(curve), slots_(curve.degree(), UniPoly(curve.field())) {}

void RingElement::accumulate(const UniPoly& c, u64 j) {
  const u64 n = curve_.degree();
  if (c.is_zero()) return;
  if (j < n) {
    slots_[j] = slots_[j] + c;
  } else {
    slots_[j % n] = slots_[j % n] + c * relation_power(curve_, j / n);
  }
}

bool RingElement::is_zero() const noexcept {
  for (const auto& s : slots_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

BiPoly RingElement::to_bipoly() const {
  BiPoly out(curve_.field());
  for (u64 j = 0; j < slots_.size(); ++j) {
    for (const Term& t : slots_[j].terms()) out.add_term(t.coeff, t.exp, j);
  }
  return out;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  RingElement out = a;
  for (u64 j = 0; j < b.slots_.size(); ++j) out.slots_[j] = out.slots_[j] + b.slots_[j];
  return out;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  RingElement out = a;
  for (u64 j = 0; j < b.slots_.size(); ++j) out.slots_[j] = out.slots_[j] - b.slots_[j];
  return out;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  const u64 n = a.curve_.degree();
  std::vector<UniPoly> wide(2 * n, UniPoly(a.curve_.field()));
  for (u64 i = 0; i < n; ++i) {
    if (a.slots_[i].is_zero()) continue;
    for (u64 j = 0; j < n; ++j) {
      if (b.slots_[j].is_zero()) continue;
      wide[i + j] = wide[i + j] + a.slots_[i] * b.slots_[j];
    }
  }
  RingElement out(a.curve_);
  for (u64 j = 0; j < wide.size(); ++j) out.accumulate(wide[j], j);
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) { return (a - b).is_zero(); }

RingElement ring_reduce(const BiPoly& poly, const FermatCurve& curve) {
  if (!(poly.field() == curve.field())) {
    throw PreconditionError("polynomial and curve are over different fields");
  }
  // Group by y-exponent so each power of the relation is expanded once.
  std::map<u64, std::vector<Term>> by_y;
  for (const auto& [key, c] : poly.terms()) by_y[key.second].push_back(Term{key.first, c});
  RingElement out(curve);
  for (auto& [j, terms] : by_y) out.accumulate(UniPoly(curve.field(), std::move(terms)), j);
  return out;
}

}  // namespace fermat
