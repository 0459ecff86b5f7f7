#pragma once

// Arithmetic in GF(p^h).
//
// An element is stored as its coefficient vector packed into a single base-p
// integer: the element c_0 + c_1 g + ... + c_{h-1} g^{h-1} has value
// sum c_i p^i, where g is the class of x modulo the field's modulus. The
// packing is a bijection onto [0, p^h), so equality is structural.
//
// Multiplication, inversion and powering go through exponent/log tables built
// once per field. Tables cost 8 bytes per element, which is what bounds the
// field order (Field::kMaxOrder = 2^22).

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

struct FieldElement {
  u32 value = 0;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

namespace detail {
struct FieldTables;
}

class Field {
 public:
  /// Largest supported p^h.
  static constexpr u64 kMaxOrder = u64{1} << 22;

  /// Prefer build_field(), which caches.
  Field(u32 p, unsigned h);

  u32 characteristic() const noexcept;
  unsigned degree() const noexcept;
  u64 order() const noexcept;
  /// Monic modulus, ascending coefficients (size h + 1).
  std::span<const u32> modulus() const noexcept;

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  /// Image of an integer under Z -> GF(p) -> GF(p^h).
  FieldElement from_int(i64 v) const;
  FieldElement from_coeffs(std::span<const u32> coeffs) const;
  std::vector<u32> coeffs(FieldElement e) const;
  /// A fixed multiplicative generator.
  FieldElement generator() const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept;
  FieldElement sub(FieldElement a, FieldElement b) const noexcept;
  FieldElement neg(FieldElement a) const noexcept;
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, u64 e) const noexcept;
  /// a^(p^k).
  FieldElement frobenius(FieldElement a, unsigned k = 1) const noexcept;

  /// Index of a nonzero element with respect to generator() (table lookup).
  u64 log(FieldElement a) const;
  /// generator()^k.
  FieldElement exp(u64 k) const noexcept;
  /// Multiplicative order of a nonzero element.
  u64 multiplicative_order(FieldElement a) const;

  /// #{y : y^n = c}.
  u64 nth_root_count(FieldElement c, u64 n) const;
  /// Some y with y^n = c (the one of least index), or nullopt.
  std::optional<FieldElement> nth_root(FieldElement c, u64 n) const;

  /// "[c0,c1,...]" with h entries.
  std::string serialize(FieldElement e) const;
  /// Accepts "[c0,...]" (at most h entries) or a bare integer, possibly negative.
  FieldElement parse_element(std::string_view text) const;
  /// "p^h:m0,m1,...,mh".
  std::string descriptor() const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
  friend Field build_field(u32 p, unsigned h);
  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds (or fetches from a process-wide cache) GF(p^h). The modulus is the
/// lexicographically smallest monic irreducible polynomial of degree h,
/// comparing coefficient vectors (c_0, ..., c_{h-1}) from c_0.
/// Throws ValidationError if p is not an odd prime, h == 0, or p^h exceeds
/// Field::kMaxOrder.
Field build_field(u32 p, unsigned h);

/// e^((p^h-1)/(p^r-1)); zero maps to zero. Requires r | h.
FieldElement norm_to_subfield(const Field& field, FieldElement e, unsigned r);

/// e^(p^r) == e. Requires r | h.
bool lies_in_subfield(const Field& field, FieldElement e, unsigned r);

/// Smallest r | h such that e lies in GF(p^r).
unsigned minimal_subfield_degree(const Field& field, FieldElement e);

/// All elements of the subfield GF(p^r), zero first, then by increasing index.
std::vector<FieldElement> subfield_elements(const Field& field, unsigned r);

/// #{y in GF(q) : y^n = c}.
inline u64 nth_root_count(const Field& field, FieldElement c, u64 n) {
  return field.nth_root_count(c, n);
}

/// A field homomorphism GF(p^r) -> GF(p^k), r | k, sending the generator of
/// the source's polynomial basis to the least-index root of its modulus.
class Embedding {
 public:
  Embedding(Field from, Field to);
  const Field& source() const noexcept { return from_; }
  const Field& target() const noexcept { return to_; }
  FieldElement operator()(FieldElement e) const;
  /// Inverse on the image; nullopt if e is not in the image.
  std::optional<FieldElement> preimage(FieldElement e) const;

 private:
  Field from_;
  Field to_;
  std::vector<FieldElement> basis_images_;
};

/// Transfers an element of `from` lying in a subfield GF(p^r) with r | to.degree()
/// into `to`. Throws PreconditionError if no such subfield contains e.
FieldElement transfer(const Field& from, FieldElement e, const Field& to);

}  // namespace fermat
