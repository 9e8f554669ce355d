#pragma once

#include <map>
#include <string>
#include <vector>

#include "jacstab/rational.hpp"

namespace jacstab {

/// Polynomial in abstract atoms C_1, C_2, ... where C_s has degree s.
/// A monomial is its exponent vector (index s-1 holds the power of C_s),
/// stored without trailing zeros.
class GradedAtomPoly {
 public:
  using Exponents = std::vector<int>;

  GradedAtomPoly() = default;

  static GradedAtomPoly constant(const Rational& c);
  static GradedAtomPoly atom(int s);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponents& e) const;

  /// Weighted degree sum s * e_s.
  static int degree(const Exponents& e);
  GradedAtomPoly homogeneous_part(int d) const;
  /// Drops every monomial of degree above d.
  GradedAtomPoly truncated(int d) const;

  GradedAtomPoly& operator+=(const GradedAtomPoly& other);
  GradedAtomPoly& operator*=(const Rational& s);
  friend GradedAtomPoly operator+(GradedAtomPoly a, const GradedAtomPoly& b) { return a += b; }
  friend GradedAtomPoly operator*(const Rational& s, GradedAtomPoly a) { return a *= s; }
  friend GradedAtomPoly operator*(const GradedAtomPoly& a, const GradedAtomPoly& b);
  friend bool operator==(const GradedAtomPoly&, const GradedAtomPoly&) = default;

  /// e.g. "-1/6 C_1^3 - C_1 C_2 - 2 C_3"; monomials by descending C_1 power.
  std::string text() const;

 private:
  void add_term(Exponents e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

/// Degree-g part of exp(sum_{s>=1} (-1)^s (s-1)! C_s), via partitions of g.
/// Throws INPUT_RANGE unless 1 <= g <= 20.
GradedAtomPoly exp_truncate(int g);

/// Partitions of g as multiplicity vectors (index s-1 holds m_s).
std::vector<std::vector<int>> partitions(int g);

}  // namespace jacstab
