#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jacstab/selftest.hpp"
#include "jacstab/theta_formulas.hpp"
#include "oracles.hpp"

using namespace jacstab;

namespace {

DivisorClass boundary(int g, int n, int h, std::vector<int> legs, Rational c = Rational(1)) {
  return DivisorClassBuilder(g, n).add_boundary(h, legs, c).build();
}

std::vector<std::int64_t> negated(std::vector<std::int64_t> tau) {
  for (auto& x : tau) x = -x;
  return tau;
}

}  // namespace

TEST(Canonicalize, SpecValues) {
  EXPECT_EQ(boundary(2, 2, 1, {2}).text(), "delta_{1,{1}}");
  EXPECT_EQ(boundary(2, 2, 0, {1}, Rational(3, 2)).text(), "-3/2 psi_1");
  const auto two = DivisorClassBuilder(2, 2).add_boundary(0, std::vector<int>{1}, Rational(1))
                       .add_boundary(2, std::vector<int>{2}, Rational(1))
                       .build();
  EXPECT_EQ(two.text(), "-2 psi_1");
  EXPECT_EQ(two.psi_coefficient(1), Rational(-2));
}

TEST(Canonicalize, InvalidIndexRejected) {
  EXPECT_JACSTAB_ERROR(boundary(2, 2, 3, {1}), ErrorCode::InvalidIndex);
  EXPECT_JACSTAB_ERROR(boundary(2, 2, 0, {}), ErrorCode::InvalidIndex);
  EXPECT_JACSTAB_ERROR(boundary(2, 2, 1, {3}), ErrorCode::InvalidIndex);
  // Zero coefficients never reach the validity check.
  EXPECT_TRUE(boundary(2, 2, 0, {}, Rational(0)).is_zero());
}

TEST(Canonicalize, ComplementRepresentativesAgree) {
  for (const auto& [g, n] : moduli_grid(5, 4)) {
    const LegMask full = full_mask(n);
    for (int h = 0; h <= g; ++h) {
      for (LegMask a = 0; a <= full; ++a) {
        if (!is_valid_boundary(g, n, h, a)) continue;
        const auto x = DivisorClassBuilder(g, n).add_boundary(h, a, Rational(1)).build();
        const auto y = DivisorClassBuilder(g, n).add_boundary(g - h, full & ~a, Rational(1)).build();
        EXPECT_EQ(x, y) << "g=" << g << " n=" << n << " h=" << h << " A=" << a;
        EXPECT_EQ(x.delta().size(), 1U);
      }
    }
  }
}

TEST(Canonicalize, IdempotentAndLinear) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coeff(-6, 6);
  for (const auto& [g, n] : moduli_grid(4, 4)) {
    for (int trial = 0; trial < 5; ++trial) {
      DivisorClassBuilder b1(g, n);
      DivisorClassBuilder b2(g, n);
      DivisorClassBuilder combined(g, n);
      const LegMask full = full_mask(n);
      for (int h = 0; h <= g; ++h) {
        for (LegMask a = 0; a <= full; ++a) {
          if (!is_valid_boundary(g, n, h, a)) continue;
          const Rational c1(coeff(rng), 2);
          const Rational c2(coeff(rng), 3);
          b1.add_boundary(h, a, c1);
          b2.add_boundary(h, a, c2);
          combined.add_boundary(h, a, Rational(3) * c1 + c2);
        }
      }
      const Rational p(coeff(rng));
      b1.add_psi(1, p).add_lambda1(p);
      combined.add_psi(1, Rational(3) * p).add_lambda1(Rational(3) * p);
      const auto x = b1.build();
      const auto y = b2.build();
      EXPECT_EQ(canonicalize(x), x);
      EXPECT_EQ(canonicalize(canonicalize(y)), canonicalize(y));
      EXPECT_EQ(Rational(3) * x + y, combined.build());
    }
  }
}

TEST(Hain, SpecValues) {
  const std::vector<std::int64_t> tau{1, -1};
  const auto c = hain_theta_pullback(2, tau);
  EXPECT_EQ(c.text(), "1/2 psi_1 + 1/2 psi_2 - 1/2 delta_{1,{1}}");
  EXPECT_EQ(hain_theta_pullback(2, negated(tau)), c);
  const auto g1 = hain_theta_pullback(1, tau);
  EXPECT_EQ(oracle::table_of(g1), oracle::hain(1, tau));
  EXPECT_EQ(g1, theta_pullback_closed(1, tau, 0));
  EXPECT_JACSTAB_ERROR(hain_theta_pullback(2, std::vector<std::int64_t>{0, 0}), ErrorCode::ZeroTau);
  EXPECT_JACSTAB_ERROR(hain_theta_pullback(2, std::vector<std::int64_t>{1, 0}), ErrorCode::TauSum);
}

TEST(ThetaClosed, SpecValues) {
  EXPECT_EQ(theta_pullback_closed(2, std::vector<std::int64_t>{1, -1}, 0).text(),
            "1/2 psi_1 + 1/2 psi_2 - 1/2 delta_{1,{1}}");
  const auto c = theta_pullback_closed(2, std::vector<std::int64_t>{2, 0}, 1);
  EXPECT_EQ(c.text(), "4 psi_1 - 1/2 kappa~_1 - 9/2 delta_{0,{1,2}} - 1/2 delta_{1,{1}}");
  EXPECT_EQ(c.psi_coefficient(2), Rational(0));
  EXPECT_JACSTAB_ERROR(theta_pullback_closed(2, std::vector<std::int64_t>{2, 0}, 0), ErrorCode::TauSum);
  EXPECT_JACSTAB_ERROR(theta_pullback_closed(0, std::vector<std::int64_t>{1, -1}, 0), ErrorCode::InputRange);
  EXPECT_JACSTAB_ERROR(theta_pullback_closed(2, std::vector<std::int64_t>{2'000'000, -2'000'000}, 0),
                       ErrorCode::InputRange);
}

TEST(ThetaGm1, SpecValues) {
  EXPECT_EQ(theta_gm1_pullback(2, std::vector<std::int64_t>{3, -2}).text(),
            "6 psi_1 + psi_2 - lambda_1 - delta_{0,{1,2}} - 3 delta_{1,{1}}");
  EXPECT_EQ(theta_gm1_pullback(2, std::vector<std::int64_t>{1, 0}).text(), "psi_1 - lambda_1 - delta_{0,{1,2}}");
  EXPECT_JACSTAB_ERROR(theta_gm1_pullback(2, std::vector<std::int64_t>{1, 1}), ErrorCode::TauSum);
}

TEST(Formulas, MatchIndependentEnumerationOnGrid) {
  for (const auto& [g, n] : moduli_grid(5, 3)) {
    for (std::int64_t k = -2; k <= 2; ++k) {
      for (const auto& tau : tau_grid(n, 3, k * (2 * g - 2))) {
        if (k == 0 && std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) continue;
        const auto closed = theta_pullback_closed(g, tau, k);
        ASSERT_EQ(oracle::table_of(closed), oracle::theta_closed(g, tau, k)) << closed.text();
        if (k == 0) {
          EXPECT_EQ(closed, theta_pullback_closed(g, negated(tau), 0));
          EXPECT_EQ(oracle::table_of(hain_theta_pullback(g, tau)), oracle::hain(g, tau));
          EXPECT_EQ(hain_theta_pullback(g, tau), closed);
        }
      }
    }
    for (const auto& tau : tau_grid(n, 3, g - 1)) {
      EXPECT_EQ(oracle::table_of(theta_gm1_pullback(g, tau)), oracle::theta_gm1(g, tau));
    }
  }
}

TEST(Mueller, SpecValues) {
  const std::vector<std::int64_t> tau{1, 3, -1};
  const auto base = theta_gm1_pullback(4, tau);
  EXPECT_EQ(mueller_correction(4, tau).text(), "delta_{2,{1}} + 2 delta_{2,{1,2,3}}");
  EXPECT_EQ(mueller_correction(4, tau, {.include_empty_legs = false}).text(), "delta_{2,{1}}");
  EXPECT_EQ(mueller_class(4, tau), base - mueller_correction(4, tau));

  const std::vector<std::int64_t> small{3, -2};
  EXPECT_TRUE(mueller_correction(2, small).is_zero());
  EXPECT_EQ(mueller_class(2, small), theta_gm1_pullback(2, small));

  // One large entry, everything else negative: no couple reaches h >= sum.
  const std::vector<std::int64_t> lopsided{9, -3, -3};
  EXPECT_TRUE(mueller_correction(4, lopsided, {.include_empty_legs = false}).is_zero());

  EXPECT_JACSTAB_ERROR(mueller_class(2, std::vector<std::int64_t>{1, 0}), ErrorCode::NoNegativeEntry);
}

TEST(Mueller, CorrectionCoefficientsAreNonNegative) {
  for (const auto& [g, n] : moduli_grid(5, 3)) {
    for (const auto& tau : tau_grid(n, 4, g - 1)) {
      if (std::none_of(tau.begin(), tau.end(), [](auto x) { return x < 0; })) continue;
      for (bool empty : {true, false}) {
        const auto c = mueller_correction(g, tau, {.include_empty_legs = empty});
        for (const auto& [idx, v] : c.delta()) EXPECT_GE(v, Rational(0));
        EXPECT_TRUE(c.psi().empty());
      }
    }
  }
}

TEST(Text, ZeroAndSymbols) {
  EXPECT_EQ(DivisorClass(2, 1).text(), "0");
  const auto c = DivisorClassBuilder(3, 1)
                     .add_lambda1(Rational(1))
                     .add_kappa1t(Rational(-1, 3))
                     .add_delta_irr(Rational(2))
                     .build();
  EXPECT_EQ(c.text(), "lambda_1 - 1/3 kappa~_1 + 2 delta_irr");
}
