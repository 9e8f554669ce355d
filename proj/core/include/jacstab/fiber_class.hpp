#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "jacstab/divisor_class.hpp"
#include "jacstab/rational.hpp"

namespace jacstab {

/// Generator of the degree <= 2 calculus on the universal curve over the
/// moduli of n-marked genus-g curves.
///   D      marked section D_i
///   KTilde relative dualizing class K~
///   B      boundary divisor B_{h,A} = delta_{h, A + {n+1}}, (h,A) canonical
struct Atom {
  enum class Kind { D, KTilde, B };

  Kind kind = Kind::D;
  int marking = 0;         // D only
  BoundaryIndex boundary;  // B only

  static Atom d(int i) { return {Kind::D, i, {}}; }
  static Atom k_tilde() { return {Kind::KTilde, 0, {}}; }
  static Atom b(BoundaryIndex idx) { return {Kind::B, 0, std::move(idx)}; }

  std::string text() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Sorted product of at most two atoms; the empty monomial is 1.
using Monomial = std::vector<Atom>;

/// Polynomial of degree <= 2 in the atoms with exact coefficients.
///
/// Products are normalized with K~ D_i = -D_i^2, D_i D_j = 0 for i != j and
/// B B' = 0 for distinct boundary atoms. Products of degree above two throw
/// DEGREE_OVERFLOW.
class FiberClass {
 public:
  FiberClass(int g, int n);

  static FiberClass constant(int g, int n, const Rational& c);
  static FiberClass d(int g, int n, int i);
  static FiberClass k_tilde(int g, int n);
  /// Throws INVALID_INDEX unless (h, legs) is a canonical valid boundary index.
  static FiberClass b(int g, int n, int h, std::vector<int> legs);

  int genus() const { return g_; }
  int markings() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  FiberClass& operator+=(const FiberClass& other);
  FiberClass& operator-=(const FiberClass& other);
  FiberClass& operator*=(const Rational& s);

  friend FiberClass operator+(FiberClass a, const FiberClass& b) { return a += b; }
  friend FiberClass operator-(FiberClass a, const FiberClass& b) { return a -= b; }
  friend FiberClass operator*(const Rational& s, FiberClass a) { return a *= s; }
  /// Normalized product.
  friend FiberClass operator*(const FiberClass& a, const FiberClass& b);
  friend bool operator==(const FiberClass&, const FiberClass&) = default;

  bool is_normalized() const;
  std::string text() const;

  /// Product without applying any relation.
  friend FiberClass multiply_raw(const FiberClass& a, const FiberClass& b);
  /// Applies the ring relations to every monomial.
  friend FiberClass normalize(const FiberClass& c);

 private:
  void add_term(Monomial m, const Rational& c);
  void require_same_space(const FiberClass& other) const;

  int g_;
  int n_;
  std::map<Monomial, Rational> terms_;
};

FiberClass multiply_raw(const FiberClass& a, const FiberClass& b);
FiberClass normalize(const FiberClass& c);

}  // namespace jacstab
