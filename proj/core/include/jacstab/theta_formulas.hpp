#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jacstab/divisor_class.hpp"

namespace jacstab {

/// Throws TAU_SUM unless tau sums to `expected`; INPUT_RANGE for huge entries.
void require_tau_sum(std::span<const std::int64_t> tau, std::int64_t expected);

/// Hain's compact-type pullback of the symmetric theta divisor (k = 0):
/// -1/4 sum over ordered (h,A) with 1 <= h+|A| <= g+n-1 of (sum_A tau)^2 delta_{h,A}.
/// Throws TAU_SUM, ZERO_TAU.
DivisorClass hain_theta_pullback(int g, std::span<const std::int64_t> tau);

/// Closed form of the theta pullback along the extended Abel-Jacobi map:
///   sum_i (tau_i^2/2 + k tau_i) psi_i - k^2/2 kappa~_1
///   - 1/2 sum_{canonical (h,A)} (k(1-2h) + sum_A tau)^2 delta_{h,A}.
/// Needs sum tau = k(2g-2). Throws TAU_SUM, ZERO_TAU.
DivisorClass theta_pullback_closed(int g, std::span<const std::int64_t> tau, std::int64_t k);

/// Degree g-1 theta pullback:
///   sum_i tau_i(tau_i+1)/2 psi_i - lambda_1
///   - sum_{canonical (h,A)} (s-h)(s-h+1)/2 delta_{h,A},   s = sum_A tau.
/// Needs sum tau = g-1. Throws TAU_SUM.
DivisorClass theta_gm1_pullback(int g, std::span<const std::int64_t> tau);

struct MuellerOptions {
  /// Whether couples (h, {}) take part in the correction.
  bool include_empty_legs = true;
};

/// Correction sum over E+ of (h - sum_A tau) delta_{h,A}, where E+ holds the
/// couples with 0 <= h <= g/2 and 2 <= h+|A| <= g+n-2, tau_i > 0 on A and
/// h >= sum_A tau. Throws TAU_SUM, NO_NEGATIVE_ENTRY.
DivisorClass mueller_correction(int g, std::span<const std::int64_t> tau, const MuellerOptions& opts = {});

/// Closure of the locus h^0(O(sum tau_i p_i)) >= 1: theta_gm1_pullback minus the correction.
DivisorClass mueller_class(int g, std::span<const std::int64_t> tau, const MuellerOptions& opts = {});

}  // namespace jacstab
