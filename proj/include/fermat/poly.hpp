#pragma once

// Sparse univariate and bivariate polynomials over a Field.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fermat/gfield.hpp"

namespace fermat {

struct Term {
  u64 exp = 0;
  FieldElement coeff;
};

/// Sparse polynomial in one variable; terms sorted by exponent, no zero coefficients.
class UniPoly {
 public:
  explicit UniPoly(Field field) : field_(std::move(field)) {}
  UniPoly(Field field, std::vector<Term> terms);
  static UniPoly monomial(const Field& field, FieldElement coeff, u64 exp);
  static UniPoly constant(const Field& field, FieldElement c) { return monomial(field, c, 0); }

  const Field& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Degree; zero polynomial has degree 0.
  u64 degree() const noexcept { return terms_.empty() ? 0 : terms_.back().exp; }
  FieldElement coeff(u64 exp) const;
  FieldElement eval(FieldElement x) const;

  UniPoly scaled(FieldElement c) const;
  UniPoly pow(u64 e) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b);

 private:
  Field field_;
  std::vector<Term> terms_;
};

/// Sparse polynomial in x and y. Keys are (x-exponent, y-exponent).
class BiPoly {
 public:
  using Key = std::pair<u64, u64>;

  explicit BiPoly(Field field) : field_(std::move(field)) {}
  static BiPoly monomial(const Field& field, FieldElement coeff, u64 i, u64 j);
  static BiPoly constant(const Field& field, FieldElement c) { return monomial(field, c, 0, 0); }
  static BiPoly x(const Field& field) { return monomial(field, field.one(), 1, 0); }
  static BiPoly y(const Field& field) { return monomial(field, field.one(), 0, 1); }

  const Field& field() const noexcept { return field_; }
  const std::map<Key, FieldElement>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  u64 total_degree() const noexcept;
  FieldElement coeff(u64 i, u64 j) const;
  void add_term(FieldElement coeff, u64 i, u64 j);

  FieldElement eval(FieldElement x, FieldElement y) const;
  BiPoly derivative_x() const;
  BiPoly derivative_y() const;
  BiPoly scaled(FieldElement c) const;
  BiPoly pow(u64 e) const;
  /// Exchanges the roles of x and y.
  BiPoly swapped() const;
  /// Human-readable form with X, Y, Z homogenized to total_degree().
  std::string to_homogeneous_string() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b);

 private:
  Field field_;
  std::map<Key, FieldElement> terms_;
};

}  // namespace fermat
