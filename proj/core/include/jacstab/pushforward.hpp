#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "jacstab/divisor_class.hpp"
#include "jacstab/fiber_class.hpp"
#include "jacstab/graph.hpp"
#include "jacstab/stability.hpp"

namespace jacstab {

/// Push-forward of the degree two monomials along the forgetful map.
///   D_i^2       -> d_squared * psi_i
///   D_i B_{h,A} -> d_b * delta_{h,A}      (i in A; zero otherwise)
///   B_{h,A}^2   -> b_squared * delta_{h,A}
///   K~ B_{h,A}  -> (k_b_slope * h + k_b_offset) * delta_{h,A}
///   K~^2        -> k_squared * kappa~_1
/// Monomials of degree 0 and 1 push to zero.
struct RuleTable {
  Rational d_squared{-1};
  Rational d_b{1};
  Rational b_squared{-1};
  Rational k_b_slope{2};
  Rational k_b_offset{-1};
  Rational k_squared{1};

  static RuleTable standard() { return {}; }

  /// Copy with one rule perturbed; names are "d2", "db", "b2", "kb", "k2".
  /// Throws PARSE on an unknown name.
  RuleTable corrupted(std::string_view rule) const;

  friend bool operator==(const RuleTable&, const RuleTable&) = default;
};

/// Linear push-forward; the input is normalized first.
DivisorClass pushforward(const FiberClass& fc, const RuleTable& rules = RuleTable::standard());

/// c_1 of the bundle L(tau,k) on the universal curve:
///   sum tau_i D_i - k K~ + sum_{canonical (h,A)} (k(1-2h) + sum_A tau) B_{h,A}.
/// Throws TAU_SUM, ZERO_TAU.
FiberClass c1_of_Lk(int g, std::span<const std::int64_t> tau, std::int64_t k);

/// pushforward(-c1^2 / 2).
DivisorClass derive_theta(int g, std::span<const std::int64_t> tau, std::int64_t k,
                          const RuleTable& rules = RuleTable::standard());

struct ChiConvention {
  /// The branch indicator in the degree g-1 twist is [1 not in A] when false,
  /// [1 in A] when true.
  bool flipped = false;
};

/// c_1 = sum tau_i D_i + sum_{canonical (h,A)} (sum_A tau - h + chi(A)) B_{h,A}.
/// Throws TAU_SUM unless sum tau = g-1.
FiberClass c1_gm1(int g, std::span<const std::int64_t> tau, ChiConvention chi = {});

/// -pushforward(c1^2/2) + pushforward(c1 K~/2) - lambda_1.
DivisorClass derive_theta_gm1(int g, std::span<const std::int64_t> tau, ChiConvention chi = {},
                              const RuleTable& rules = RuleTable::standard());

/// Degree g-1 multidegree on a two-component compact-type curve:
/// g(v) - [marking 1 not on v]. Throws WRONG_SHAPE, NO_BASEPOINT.
Multidegree compact_type_gm1_multidegree(const DualGraph& graph);

}  // namespace jacstab
