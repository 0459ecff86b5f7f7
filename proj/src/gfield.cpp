#include "fermat/gfield.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "fermat/error.hpp"

namespace fermat {

namespace detail {

struct FieldTables {
  u32 p = 0;
  unsigned h = 0;
  u64 q = 0;
  std::vector<u32> modulus;   // ascending, monic, size h + 1
  std::vector<u32> pow_p;     // p^i, i < h
  std::vector<u32> exp;       // generator^i, i < 2(q-1)
  std::vector<u32> log;       // inverse of exp on nonzero values
  FieldElement generator{};
};

}  // namespace detail

namespace {

using DensePoly = std::vector<u32>;  // ascending coefficients over GF(p)

void trim(DensePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic
DensePoly poly_mod(DensePoly a, const DensePoly& f, u32 p) {
  const size_t df = f.size() - 1;
  trim(a);
  while (a.size() > df) {
    const u64 lead = a.back();
    const size_t shift = a.size() - 1 - df;
    for (size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<u32>((a[shift + i] + (p - lead) * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

DensePoly poly_mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& f, u32 p) {
  if (a.empty() || b.empty()) return {};
  DensePoly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<u32>((prod[i + j] + u64{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), f, p);
}

DensePoly poly_powmod(DensePoly base, u64 e, const DensePoly& f, u32 p) {
  DensePoly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return poly_mod(std::move(result), f, p);
}

DensePoly poly_gcd(DensePoly a, DensePoly b, u32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then reduce a
    const u64 inv = pow_mod(b.back(), p - 2, p);
    for (auto& c : b) c = static_cast<u32>(c * inv % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const DensePoly& f, u32 p) {
  const size_t h = f.size() - 1;
  if (h == 1) return true;
  DensePoly x{0, 1};
  DensePoly xpk = x;
  for (size_t k = 1; k <= h / 2; ++k) {
    xpk = poly_powmod(xpk, p, f, p);
    DensePoly diff = xpk;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    DensePoly g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

DensePoly unpack(u64 value, u32 p, unsigned h) {
  DensePoly d(h);
  for (unsigned i = 0; i < h; ++i) {
    d[i] = static_cast<u32>(value % p);
    value /= p;
  }
  return d;
}

u32 pack(const DensePoly& d, const std::vector<u32>& pow_p) {
  u64 v = 0;
  for (size_t i = 0; i < d.size(); ++i) v += u64{d[i]} * pow_p[i];
  return static_cast<u32>(v);
}

std::shared_ptr<detail::FieldTables> make_tables(u32 p, unsigned h) {
  if (!is_prime(p) || p == 2) {
    throw ValidationError("field characteristic must be an odd prime, got " + std::to_string(p));
  }
  if (h == 0) throw ValidationError("extension degree must be at least 1");
  auto q = checked_pow(p, h, Field::kMaxOrder);
  if (!q) {
    throw ValidationError("field order " + std::to_string(p) + "^" + std::to_string(h) +
                          " exceeds the supported ceiling 2^22");
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->h = h;
  t->q = *q;
  t->pow_p.resize(h);
  for (unsigned i = 0; i < h; ++i) t->pow_p[i] = static_cast<u32>(*checked_pow(p, i));

  // Smallest monic irreducible, c_0 most significant.
  for (u64 idx = 0; idx < t->q; ++idx) {
    DensePoly f(h + 1);
    u64 v = idx;
    for (unsigned i = 0; i < h; ++i) {
      f[h - 1 - i] = static_cast<u32>(v % p);
      v /= p;
    }
    f[h] = 1;
    if (is_irreducible(f, p)) {
      t->modulus = std::move(f);
      break;
    }
  }

  const u64 group = t->q - 1;
  const auto factors = prime_factors(group);
  DensePoly gen;
  for (u64 cand = 2; cand < t->q; ++cand) {
    DensePoly g = unpack(cand, p, h);
    trim(g);
    bool primitive = true;
    for (u64 l : factors) {
      DensePoly r = poly_powmod(g, group / l, t->modulus, p);
      if (r.size() == 1 && r[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = unpack(cand, p, h);
      t->generator = FieldElement{static_cast<u32>(cand)};
      break;
    }
  }

  t->exp.assign(2 * group, 0);
  t->log.assign(t->q, 0);
  DensePoly cur(h, 0);
  cur[0] = 1;
  for (u64 i = 0; i < group; ++i) {
    const u32 packed = pack(cur, t->pow_p);
    t->exp[i] = packed;
    t->exp[i + group] = packed;
    t->log[packed] = static_cast<u32>(i);
    if (h == 1) {
      cur[0] = static_cast<u32>(u64{cur[0]} * gen[0] % p);
    } else {
      DensePoly trimmed = cur;
      trim(trimmed);
      DensePoly nxt = poly_mulmod(trimmed, gen, t->modulus, p);
      nxt.resize(h, 0);
      cur = std::move(nxt);
    }
  }
  return t;
}

}  // namespace

Field::Field(u32 p, unsigned h) : t_(make_tables(p, h)) {}

Field build_field(u32 p, unsigned h) {
  static std::mutex mu;
  static std::map<std::pair<u32, unsigned>, std::shared_ptr<const detail::FieldTables>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, h});
    if (it != cache.end()) return Field(it->second);
  }
  auto tables = make_tables(p, h);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, h), std::move(tables));
  return Field(it->second);
}

u32 Field::characteristic() const noexcept { return t_->p; }
unsigned Field::degree() const noexcept { return t_->h; }
u64 Field::order() const noexcept { return t_->q; }
std::span<const u32> Field::modulus() const noexcept { return t_->modulus; }
FieldElement Field::generator() const noexcept { return t_->generator; }

FieldElement Field::from_int(i64 v) const {
  const i64 p = t_->p;
  i64 r = v % p;
  if (r < 0) r += p;
  return FieldElement{static_cast<u32>(r)};
}

FieldElement Field::from_coeffs(std::span<const u32> coeffs) const {
  if (coeffs.size() > t_->h) throw ValidationError("too many coefficients for field element");
  u64 v = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) v += u64{coeffs[i] % t_->p} * t_->pow_p[i];
  return FieldElement{static_cast<u32>(v)};
}

std::vector<u32> Field::coeffs(FieldElement e) const { return unpack(e.value, t_->p, t_->h); }

FieldElement Field::add(FieldElement a, FieldElement b) const noexcept {
  const u32 p = t_->p;
  if (t_->h == 1) {
    u32 s = a.value + b.value;
    return FieldElement{s >= p ? s - p : s};
  }
  u32 x = a.value, y = b.value, out = 0;
  for (unsigned i = 0; i < t_->h; ++i) {
    u32 s = x % p + y % p;
    if (s >= p) s -= p;
    out += s * t_->pow_p[i];
    x /= p;
    y /= p;
  }
  return FieldElement{out};
}

FieldElement Field::neg(FieldElement a) const noexcept {
  const u32 p = t_->p;
  if (t_->h == 1) return FieldElement{a.value == 0 ? 0 : p - a.value};
  u32 x = a.value, out = 0;
  for (unsigned i = 0; i < t_->h; ++i) {
    const u32 d = x % p;
    out += (d == 0 ? 0 : p - d) * t_->pow_p[i];
    x /= p;
  }
  return FieldElement{out};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const noexcept {
  if (a.value == 0 || b.value == 0) return FieldElement{0};
  return FieldElement{t_->exp[t_->log[a.value] + t_->log[b.value]]};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.value == 0) throw std::domain_error("inverse of zero");
  const u64 group = t_->q - 1;
  const u64 l = t_->log[a.value];
  return FieldElement{t_->exp[l == 0 ? 0 : group - l]};
}

FieldElement Field::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement Field::pow(FieldElement a, u64 e) const noexcept {
  if (e == 0) return one();
  if (a.value == 0) return zero();
  const u64 group = t_->q - 1;
  return FieldElement{t_->exp[(u64{t_->log[a.value]} * (e % group)) % group]};
}

FieldElement Field::frobenius(FieldElement a, unsigned k) const noexcept {
  if (a.value == 0) return a;
  const u64 group = t_->q - 1;
  return pow(a, pow_mod(t_->p, k, group) + group);
}

u64 Field::log(FieldElement a) const {
  if (a.value == 0) throw std::domain_error("log of zero");
  return t_->log[a.value];
}

FieldElement Field::exp(u64 k) const noexcept { return FieldElement{t_->exp[k % (t_->q - 1)]}; }

u64 Field::multiplicative_order(FieldElement a) const {
  const u64 group = t_->q - 1;
  return group / std::gcd(log(a), group);
}

u64 Field::nth_root_count(FieldElement c, u64 n) const {
  if (n == 0) throw ValidationError("root degree must be positive");
  if (c.value == 0) return 1;
  const u64 g = std::gcd(n, t_->q - 1);
  return t_->log[c.value] % g == 0 ? g : 0;
}

std::optional<FieldElement> Field::nth_root(FieldElement c, u64 n) const {
  if (n == 0) throw ValidationError("root degree must be positive");
  if (c.value == 0) return zero();
  const u64 group = t_->q - 1;
  const u64 g = std::gcd(n, group);
  const u64 l = t_->log[c.value];
  if (l % g != 0) return std::nullopt;
  const u64 m = group / g;
  const u64 inv = *inverse_mod((n / g) % m, m);
  const u64 k = static_cast<u64>((u128{l / g} * inv) % m);
  return FieldElement{t_->exp[k]};
}

std::string Field::serialize(FieldElement e) const {
  std::string out = "[";
  const auto c = coeffs(e);
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + "]";
}

namespace {

i64 parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

FieldElement Field::parse_element(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty field element");
  if (text.front() != '[') return from_int(parse_int(text));
  if (text.back() != ']') throw ValidationError("malformed field element '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<u32> coeffs;
  while (!text.empty()) {
    const size_t comma = text.find(',');
    const auto part = text.substr(0, comma);
    coeffs.push_back(from_int(parse_int(part)).value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_coeffs(coeffs);
}

std::string Field::descriptor() const {
  std::string out = std::to_string(t_->p) + "^" + std::to_string(t_->h) + ":";
  for (size_t i = 0; i < t_->modulus.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t_->modulus[i]);
  }
  return out;
}

bool operator==(const Field& a, const Field& b) noexcept {
  return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->h == b.t_->h);
}

namespace {

void require_divides(const Field& field, unsigned r) {
  if (r == 0 || field.degree() % r != 0) {
    throw PreconditionError("subfield degree " + std::to_string(r) + " does not divide " +
                            std::to_string(field.degree()));
  }
}

}  // namespace

FieldElement norm_to_subfield(const Field& field, FieldElement e, unsigned r) {
  require_divides(field, r);
  if (e == field.zero()) return e;
  const u64 sub = *checked_pow(field.characteristic(), r);
  return field.pow(e, (field.order() - 1) / (sub - 1));
}

bool lies_in_subfield(const Field& field, FieldElement e, unsigned r) {
  require_divides(field, r);
  return field.frobenius(e, r) == e;
}

unsigned minimal_subfield_degree(const Field& field, FieldElement e) {
  for (u64 r : divisors(field.degree())) {
    if (lies_in_subfield(field, e, static_cast<unsigned>(r))) return static_cast<unsigned>(r);
  }
  return field.degree();
}

std::vector<FieldElement> subfield_elements(const Field& field, unsigned r) {
  require_divides(field, r);
  const u64 sub = *checked_pow(field.characteristic(), r);
  const u64 step = (field.order() - 1) / (sub - 1);
  std::vector<FieldElement> out{field.zero()};
  out.reserve(sub);
  for (u64 j = 0; j + 1 < sub; ++j) out.push_back(field.exp(j * step));
  std::sort(out.begin() + 1, out.end());
  return out;
}

Embedding::Embedding(Field from, Field to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_.characteristic() != to_.characteristic() || to_.degree() % from_.degree() != 0) {
    throw PreconditionError("no embedding of " + from_.descriptor() + " into " + to_.descriptor());
  }
  const auto mod = from_.modulus();
  auto eval = [&](FieldElement x) {
    FieldElement acc = to_.zero();
    for (size_t i = mod.size(); i-- > 0;) {
      acc = to_.add(to_.mul(acc, x), to_.from_int(mod[i]));
    }
    return acc;
  };
  std::optional<FieldElement> root;
  for (FieldElement cand : subfield_elements(to_, from_.degree())) {
    if (eval(cand) == to_.zero()) {
      root = cand;
      break;
    }
  }
  if (!root) throw InternalMismatch("modulus has no root in the target field");
  basis_images_.resize(from_.degree());
  FieldElement acc = to_.one();
  for (auto& img : basis_images_) {
    img = acc;
    acc = to_.mul(acc, *root);
  }
}

FieldElement Embedding::operator()(FieldElement e) const {
  const auto c = from_.coeffs(e);
  FieldElement acc = to_.zero();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) acc = to_.add(acc, to_.mul(to_.from_int(c[i]), basis_images_[i]));
  }
  return acc;
}

std::optional<FieldElement> Embedding::preimage(FieldElement e) const {
  for (u64 v = 0; v < from_.order(); ++v) {
    FieldElement cand{static_cast<u32>(v)};
    if ((*this)(cand) == e) return cand;
  }
  return std::nullopt;
}

FieldElement transfer(const Field& from, FieldElement e, const Field& to) {
  if (from.characteristic() != to.characteristic()) {
    throw PreconditionError("fields of different characteristic");
  }
  if (from == to) return e;
  const unsigned r = minimal_subfield_degree(from, e);
  if (to.degree() % r != 0) {
    throw PreconditionError("element " + from.serialize(e) + " of " + from.descriptor() +
                            " does not lie in a subfield of " + to.descriptor());
  }
  const Field sub = build_field(from.characteristic(), r);
  const auto in_sub = Embedding(sub, from).preimage(e);
  if (!in_sub) throw InternalMismatch("subfield element has no preimage");
  return Embedding(sub, to)(*in_sub);
}

}  // namespace fermat
