#include "fermat/poly.hpp"

#include <algorithm>

#include "fermat/error.hpp"

namespace fermat {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw PreconditionError("polynomials over different fields");
}

// Sorts by exponent and merges equal exponents, dropping zeros.
std::vector<Term> normalize(const Field& f, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [&](const Term& t) { return t.coeff == f.zero(); });
  return out;
}

}  // namespace

UniPoly::UniPoly(Field field, std::vector<Term> terms)
    : field_(std::move(field)), terms_(normalize(field_, std::move(terms))) {}

UniPoly UniPoly::monomial(const Field& field, FieldElement coeff, u64 exp) {
  return UniPoly(field, {Term{exp, coeff}});
}

FieldElement UniPoly::coeff(u64 exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, u64 e) { return t.exp < e; });
  return (it != terms_.end() && it->exp == exp) ? it->coeff : field_.zero();
}

FieldElement UniPoly::eval(FieldElement x) const {
  FieldElement acc = field_.zero();
  for (const Term& t : terms_) acc = field_.add(acc, field_.mul(t.coeff, field_.pow(x, t.exp)));
  return acc;
}

UniPoly UniPoly::scaled(FieldElement c) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff = field_.mul(t.coeff, c);
  return UniPoly(field_, std::move(out));
}

UniPoly UniPoly::pow(u64 e) const {
  UniPoly result = constant(field_, field_.one());
  UniPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field_, b.field_);
  std::vector<Term> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return UniPoly(a.field_, std::move(all));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  return a + b.scaled(b.field_.neg(b.field_.one()));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field_, b.field_);
  const Field& f = a.field_;
  std::vector<Term> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& s : a.terms_) {
    for (const Term& t : b.terms_) all.push_back(Term{s.exp + t.exp, f.mul(s.coeff, t.coeff)});
  }
  return UniPoly(f, std::move(all));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

BiPoly BiPoly::monomial(const Field& field, FieldElement coeff, u64 i, u64 j) {
  BiPoly out(field);
  out.add_term(coeff, i, j);
  return out;
}

u64 BiPoly::total_degree() const noexcept {
  u64 d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

FieldElement BiPoly::coeff(u64 i, u64 j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? field_.zero() : it->second;
}

void BiPoly::add_term(FieldElement coeff, u64 i, u64 j) {
  if (coeff == field_.zero()) return;
  auto [it, inserted] = terms_.emplace(Key{i, j}, coeff);
  if (!inserted) {
    it->second = field_.add(it->second, coeff);
    if (it->second == field_.zero()) terms_.erase(it);
  }
}

FieldElement BiPoly::eval(FieldElement x, FieldElement y) const {
  FieldElement acc = field_.zero();
  for (const auto& [k, c] : terms_) {
    acc = field_.add(acc, field_.mul(c, field_.mul(field_.pow(x, k.first), field_.pow(y, k.second))));
  }
  return acc;
}

BiPoly BiPoly::derivative_x() const {
  BiPoly out(field_);
  for (const auto& [k, c] : terms_) {
    if (k.first > 0) {
      out.add_term(field_.mul(c, field_.from_int(static_cast<i64>(k.first % field_.characteristic()))),
                   k.first - 1, k.second);
    }
  }
  return out;
}

BiPoly BiPoly::derivative_y() const { return swapped().derivative_x().swapped(); }

BiPoly BiPoly::scaled(FieldElement c) const {
  BiPoly out(field_);
  for (const auto& [k, v] : terms_) out.add_term(field_.mul(v, c), k.first, k.second);
  return out;
}

BiPoly BiPoly::pow(u64 e) const {
  BiPoly result = constant(field_, field_.one());
  BiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

BiPoly BiPoly::swapped() const {
  BiPoly out(field_);
  for (const auto& [k, c] : terms_) out.add_term(c, k.second, k.first);
  return out;
}

std::string BiPoly::to_homogeneous_string() const {
  if (terms_.empty()) return "0";
  const u64 d = total_degree();
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!out.empty()) out += " + ";
    out += field_.serialize(c);
    auto factor = [&](const char* name, u64 e) {
      if (e == 0) return;
      out += std::string("*") + name;
      if (e > 1) out += "^" + std::to_string(e);
    };
    factor("X", k.first);
    factor("Y", k.second);
    factor("Z", d - k.first - k.second);
  }
  return out;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  require_same_field(a.field_, b.field_);
  BiPoly out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(c, k.first, k.second);
  return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  return a + b.scaled(b.field_.neg(b.field_.one()));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  require_same_field(a.field_, b.field_);
  BiPoly out(a.field_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term(a.field_.mul(ca, cb), ka.first + kb.first, ka.second + kb.second);
    }
  }
  return out;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

}  // namespace fermat
