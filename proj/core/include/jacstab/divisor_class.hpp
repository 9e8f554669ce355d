#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jacstab/rational.hpp"

namespace jacstab {

inline constexpr int kMaxMarkings = 16;
inline constexpr int kMaxGenus = 40;

using LegMask = std::uint32_t;  // bit i-1 set when marking i is in A

LegMask to_mask(std::span<const int> legs);
std::vector<int> from_mask(LegMask mask);
LegMask full_mask(int n);

/// Boundary divisor delta_{h,A}: closure of curves with one node splitting off
/// a genus-h component carrying the markings A. Ordered by (h, lex A).
struct BoundaryIndex {
  int h = 0;
  std::vector<int> legs;

  friend bool operator==(const BoundaryIndex&, const BoundaryIndex&) = default;
  friend auto operator<=>(const BoundaryIndex&, const BoundaryIndex&) = default;
};

/// 2 <= h + |A| <= g + n - 2 with 0 <= h <= g and A inside {1..n}.
bool is_valid_boundary(int g, int n, int h, LegMask legs);

/// h < g/2, or h = g/2 with marking 1 in A.
bool is_canonical_boundary(int g, int n, int h, LegMask legs);

/// Representative of {(h,A), (g-h,A^c)} in canonical form.
BoundaryIndex canonical_boundary(int g, int n, int h, LegMask legs);

/// All canonical valid boundary indices, sorted.
std::vector<BoundaryIndex> canonical_boundaries(int g, int n);

/// Throws INPUT_RANGE unless 0 <= g <= kMaxGenus, 0 <= n <= kMaxMarkings and 2g-2+n > 0.
void require_moduli_range(int g, int n);

/// Divisor class on the moduli space of stable n-marked genus-g curves over
/// the basis psi_i, lambda_1, kappa~_1, delta_irr and canonical delta_{h,A}.
/// Coefficients are exact; zero coefficients are never stored.
class DivisorClass {
 public:
  DivisorClass(int g, int n);

  int genus() const { return g_; }
  int markings() const { return n_; }

  const std::map<int, Rational>& psi() const { return psi_; }
  const Rational& lambda1() const { return lambda1_; }
  const Rational& kappa1t() const { return kappa1t_; }
  const Rational& delta_irr() const { return delta_irr_; }
  const std::map<BoundaryIndex, Rational>& delta() const { return delta_; }

  Rational psi_coefficient(int i) const;
  /// Coefficient of the class of (h, A); any representative is accepted.
  Rational delta_coefficient(int h, std::span<const int> legs) const;

  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& s);

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  /// One line, deterministic order, e.g. "1/2 psi_1 + 1/2 psi_2 - 1/2 delta_{1,{1}}".
  std::string text() const;

 private:
  friend class DivisorClassBuilder;
  void require_same_space(const DivisorClass& other) const;
  void prune();

  int g_;
  int n_;
  std::map<int, Rational> psi_;
  Rational lambda1_;
  Rational kappa1t_;
  Rational delta_irr_;
  std::map<BoundaryIndex, Rational> delta_;
};

/// Collects raw terms, with boundary indices in any representative, and
/// canonicalizes them: delta_{0,{i}} and delta_{g,[n]-{i}} become -psi_i,
/// complementary pairs are merged onto the canonical representative, and
/// indices that are neither are checked for validity.
class DivisorClassBuilder {
 public:
  DivisorClassBuilder(int g, int n);

  DivisorClassBuilder& add_psi(int i, const Rational& c);
  DivisorClassBuilder& add_lambda1(const Rational& c);
  DivisorClassBuilder& add_kappa1t(const Rational& c);
  DivisorClassBuilder& add_delta_irr(const Rational& c);
  DivisorClassBuilder& add_boundary(int h, std::span<const int> legs, const Rational& c);
  DivisorClassBuilder& add_boundary(int h, LegMask legs, const Rational& c);
  DivisorClassBuilder& add(const DivisorClass& c);

  /// Throws INVALID_INDEX for a nonzero raw boundary term that is neither a
  /// psi convention nor a valid divisor.
  DivisorClass build() const;

 private:
  struct RawBoundary {
    int h;
    LegMask legs;
    Rational c;
  };
  int g_;
  int n_;
  std::map<int, Rational> psi_;
  Rational lambda1_;
  Rational kappa1t_;
  Rational delta_irr_;
  std::vector<RawBoundary> raw_;
};

/// Re-canonicalizes an existing class. Idempotent.
DivisorClass canonicalize(const DivisorClass& c);

}  // namespace jacstab
