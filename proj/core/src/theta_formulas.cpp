#include "jacstab/theta_formulas.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "jacstab/error.hpp"

namespace jacstab {

namespace {

constexpr std::int64_t kMaxTauEntry = 1'000'000;

std::int64_t sum_on(std::span<const std::int64_t> tau, LegMask legs) {
  std::int64_t s = 0;
  for (int i : from_mask(legs)) s += tau[static_cast<std::size_t>(i - 1)];
  return s;
}

int moduli_markings(int g, std::span<const std::int64_t> tau) {
  const int n = static_cast<int>(tau.size());
  require_moduli_range(g, n);
  return n;
}

bool all_zero(std::span<const std::int64_t> tau) {
  return std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; });
}

}  // namespace

void require_tau_sum(std::span<const std::int64_t> tau, std::int64_t expected) {
  if (std::any_of(tau.begin(), tau.end(), [](auto x) { return std::abs(x) > kMaxTauEntry; })) {
    throw Error(ErrorCode::InputRange, "tau entries are limited to absolute value 1e6");
  }
  const auto sum = std::accumulate(tau.begin(), tau.end(), std::int64_t{0});
  if (sum != expected) {
    throw Error(ErrorCode::TauSum,
                "sum of tau is " + std::to_string(sum) + ", expected " + std::to_string(expected));
  }
}

DivisorClass hain_theta_pullback(int g, std::span<const std::int64_t> tau) {
  const int n = moduli_markings(g, tau);
  require_tau_sum(tau, 0);
  if (all_zero(tau)) throw Error(ErrorCode::ZeroTau, "tau must be nonzero");

  DivisorClassBuilder b(g, n);
  for (int h = 0; h <= g; ++h) {
    for (LegMask a = 0;; ++a) {
      const int weight = h + std::popcount(a);
      if (1 <= weight && weight <= g + n - 1) {
        const auto s = sum_on(tau, a);
        b.add_boundary(h, a, Rational(-s * s, 4));
      }
      if (a == full_mask(n)) break;
    }
  }
  return b.build();
}

DivisorClass theta_pullback_closed(int g, std::span<const std::int64_t> tau, std::int64_t k) {
  const int n = moduli_markings(g, tau);
  if (std::abs(k) > kMaxTauEntry) throw Error(ErrorCode::InputRange, "k out of range");
  require_tau_sum(tau, k * (2 * std::int64_t{g} - 2));
  if (k == 0 && all_zero(tau)) throw Error(ErrorCode::ZeroTau, "tau must be nonzero when k = 0");

  DivisorClassBuilder b(g, n);
  for (int i = 1; i <= n; ++i) {
    const auto t = tau[static_cast<std::size_t>(i - 1)];
    b.add_psi(i, Rational(t * t, 2) + Rational(k * t));
  }
  b.add_kappa1t(Rational(-k * k, 2));
  for (const auto& idx : canonical_boundaries(g, n)) {
    const auto c = k * (1 - 2 * std::int64_t{idx.h}) + sum_on(tau, to_mask(idx.legs));
    b.add_boundary(idx.h, idx.legs, Rational(-c * c, 2));
  }
  return b.build();
}

DivisorClass theta_gm1_pullback(int g, std::span<const std::int64_t> tau) {
  const int n = moduli_markings(g, tau);
  require_tau_sum(tau, std::int64_t{g} - 1);

  DivisorClassBuilder b(g, n);
  for (int i = 1; i <= n; ++i) {
    const auto t = tau[static_cast<std::size_t>(i - 1)];
    b.add_psi(i, Rational(t * (t + 1), 2));
  }
  b.add_lambda1(Rational(-1));
  for (const auto& idx : canonical_boundaries(g, n)) {
    const auto x = sum_on(tau, to_mask(idx.legs)) - idx.h;
    b.add_boundary(idx.h, idx.legs, Rational(-x * (x + 1), 2));
  }
  return b.build();
}

DivisorClass mueller_correction(int g, std::span<const std::int64_t> tau, const MuellerOptions& opts) {
  const int n = moduli_markings(g, tau);
  require_tau_sum(tau, std::int64_t{g} - 1);
  if (std::none_of(tau.begin(), tau.end(), [](auto x) { return x < 0; })) {
    throw Error(ErrorCode::NoNegativeEntry, "at least one tau_i must be negative");
  }

  LegMask positive = 0;
  for (int i = 1; i <= n; ++i) {
    if (tau[static_cast<std::size_t>(i - 1)] > 0) positive |= LegMask{1} << (i - 1);
  }

  DivisorClassBuilder b(g, n);
  for (int h = 0; 2 * h <= g; ++h) {
    for (LegMask a = 0;; ++a) {
      const bool eligible = (a & ~positive) == 0 && (a != 0 || opts.include_empty_legs) &&
                            is_valid_boundary(g, n, h, a);
      if (eligible) {
        const auto s = sum_on(tau, a);
        if (h >= s) b.add_boundary(h, a, Rational(h - s));
      }
      if (a == full_mask(n)) break;
    }
  }
  return b.build();
}

DivisorClass mueller_class(int g, std::span<const std::int64_t> tau, const MuellerOptions& opts) {
  return theta_gm1_pullback(g, tau) - mueller_correction(g, tau, opts);
}

}  // namespace jacstab
