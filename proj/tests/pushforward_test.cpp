#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jacstab/graded_series.hpp"
#include "jacstab/pushforward.hpp"
#include "jacstab/random_graphs.hpp"
#include "jacstab/selftest.hpp"
#include "jacstab/theta_formulas.hpp"
#include "oracles.hpp"

using namespace jacstab;

namespace {

using Tau = std::vector<std::int64_t>;

FiberClass random_linear(std::mt19937_64& rng, int g, int n) {
  std::uniform_int_distribution<int> c(-3, 3);
  FiberClass f(g, n);
  for (int i = 1; i <= n; ++i) f += Rational(c(rng)) * FiberClass::d(g, n, i);
  f += Rational(c(rng)) * FiberClass::k_tilde(g, n);
  for (const auto& idx : canonical_boundaries(g, n)) {
    f += Rational(c(rng), 2) * FiberClass::b(g, n, idx.h, idx.legs);
  }
  return f;
}

}  // namespace

TEST(C1, SpecValues) {
  EXPECT_EQ(c1_of_Lk(2, Tau{1, -1}, 0).text(), "D_1 - D_2 + B_{1,{1}}");
  EXPECT_EQ(c1_of_Lk(2, Tau{2, 0}, 1).text(), "2 D_1 - K~ + 3 B_{0,{1,2}} + B_{1,{1}}");
  EXPECT_JACSTAB_ERROR(c1_of_Lk(2, Tau{0, 0}, 0), ErrorCode::ZeroTau);
  EXPECT_JACSTAB_ERROR(c1_of_Lk(2, Tau{1, 0}, 0), ErrorCode::TauSum);
}

TEST(Pushforward, SpecValues) {
  const FiberClass d1 = FiberClass::d(2, 2, 1);
  const FiberClass b = FiberClass::b(2, 2, 1, {1});
  const FiberClass k = FiberClass::k_tilde(2, 2);
  EXPECT_EQ(pushforward(d1 * b).text(), "delta_{1,{1}}");
  EXPECT_TRUE(pushforward(FiberClass::d(2, 2, 2) * b).is_zero());
  EXPECT_EQ((k * d1).text(), "-D_1^2");
  EXPECT_EQ(pushforward(k * d1).text(), "psi_1");
  EXPECT_EQ(pushforward(b * b).text(), "-delta_{1,{1}}");
  EXPECT_EQ(pushforward(k * k).text(), "kappa~_1");
  EXPECT_EQ(pushforward(k * FiberClass::b(2, 2, 0, {1, 2})).text(), "-delta_{0,{1,2}}");
  EXPECT_TRUE(pushforward(d1).is_zero());
  EXPECT_TRUE(pushforward(d1 * FiberClass::d(2, 2, 2)).is_zero());
  EXPECT_TRUE(pushforward(b * FiberClass::b(2, 2, 0, {1, 2})).is_zero());
}

TEST(FiberClass, DegreeOverflowAndIndexChecks) {
  const FiberClass d1 = FiberClass::d(2, 2, 1);
  EXPECT_JACSTAB_ERROR(d1 * d1 * d1, ErrorCode::DegreeOverflow);
  EXPECT_JACSTAB_ERROR(FiberClass::d(2, 2, 3), ErrorCode::InvalidIndex);
  EXPECT_JACSTAB_ERROR(FiberClass::b(2, 2, 1, {2}), ErrorCode::InvalidIndex);
}

TEST(FiberClass, NormalizationIsConfluent) {
  std::mt19937_64 rng(31);
  for (const auto& [g, n] : moduli_grid(3, 3)) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto a = random_linear(rng, g, n);
      const auto b = random_linear(rng, g, n);
      const auto c = random_linear(rng, g, n);
      const auto ab = a * b;
      EXPECT_TRUE(ab.is_normalized());
      EXPECT_EQ(ab, b * a);
      EXPECT_EQ(ab, normalize(multiply_raw(a, b)));
      EXPECT_EQ(normalize(ab), ab);
      EXPECT_EQ(a * (b + c), ab + a * c);
      // Pushing forward the raw product applies the same relations.
      EXPECT_EQ(pushforward(multiply_raw(a, b)), pushforward(ab));
      EXPECT_EQ(pushforward(a * (b + c)), pushforward(ab) + pushforward(a * c));
    }
  }
}

TEST(DeriveTheta, SpecValues) {
  EXPECT_EQ(derive_theta(2, Tau{1, -1}, 0).text(), "1/2 psi_1 + 1/2 psi_2 - 1/2 delta_{1,{1}}");
  EXPECT_EQ(derive_theta(2, Tau{2, 0}, 1), theta_pullback_closed(2, Tau{2, 0}, 1));
  EXPECT_EQ(derive_theta_gm1(2, Tau{3, -2}).text(), "6 psi_1 + psi_2 - lambda_1 - delta_{0,{1,2}} - 3 delta_{1,{1}}");
}

TEST(DeriveTheta, MatchesClosedFormsAndOracle) {
  for (const auto& [g, n] : moduli_grid(4, 3)) {
    for (std::int64_t k = -2; k <= 2; ++k) {
      for (const auto& tau : tau_grid(n, 3, k * (2 * g - 2))) {
        if (k == 0 && std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) continue;
        const auto d = derive_theta(g, tau, k);
        EXPECT_EQ(oracle::table_of(d), oracle::theta_closed(g, tau, k));
        EXPECT_EQ(d, theta_pullback_closed(g, tau, k));
      }
    }
    for (const auto& tau : tau_grid(n, 3, g - 1)) {
      const auto closed = theta_gm1_pullback(g, tau);
      EXPECT_EQ(derive_theta_gm1(g, tau), closed);
      EXPECT_EQ(derive_theta_gm1(g, tau, {.flipped = true}), closed);
    }
  }
}

TEST(DeriveTheta, EveryCorruptedRuleIsDetected) {
  for (const char* rule : {"d2", "db", "b2", "kb", "k2"}) {
    const auto rules = RuleTable::standard().corrupted(rule);
    bool differs = false;
    for (const auto& [g, n] : moduli_grid(3, 3)) {
      for (std::int64_t k = -1; k <= 1 && !differs; ++k) {
        for (const auto& tau : tau_grid(n, 2, k * (2 * g - 2))) {
          if (k == 0 && std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) continue;
          if (derive_theta(g, tau, k, rules) != theta_pullback_closed(g, tau, k)) {
            differs = true;
            break;
          }
        }
      }
    }
    EXPECT_TRUE(differs) << rule;
  }
  EXPECT_JACSTAB_ERROR(RuleTable::standard().corrupted("zz"), ErrorCode::Parse);
}

TEST(CompactTypeGm1, SpecValues) {
  const auto tree = oracle::load_graph("two_vertex_tree.json");
  EXPECT_EQ(compact_type_gm1_multidegree(tree).degrees, (Tau{1, 0}));
  const auto g02 = oracle::load_graph("compact_g02.json");
  EXPECT_EQ(compact_type_gm1_multidegree(g02).degrees, (Tau{0, 1}));
  EXPECT_JACSTAB_ERROR(compact_type_gm1_multidegree(oracle::load_graph("banana.json")), ErrorCode::WrongShape);
  const auto unmarked = fixtures::make_graph(0, {{"a", 1, {}}, {"b", 1, {}}}, {{"a", "b"}});
  EXPECT_JACSTAB_ERROR(compact_type_gm1_multidegree(unmarked), ErrorCode::NoBasepoint);
}

TEST(CompactTypeGm1, QStableWithTotalGMinusOne) {
  const auto graphs = two_vertex_compact_graphs(6);
  EXPECT_GT(graphs.size(), 20U);
  for (const auto& g : graphs) {
    const auto m = compact_type_gm1_multidegree(g);
    EXPECT_EQ(m.total(), g.genus() - 1);
    EXPECT_TRUE(oracle::is_stable(g, oracle::Pol::TrivialGm1, m.degrees, oracle::Mode::QStable,
                                  *g.vertex_of_marking(1)));
    const auto all = oracle::brute_force_stable(g, oracle::Pol::TrivialGm1, oracle::Mode::QStable,
                                                *g.vertex_of_marking(1));
    ASSERT_EQ(all.size(), 1U);
    EXPECT_EQ(all.front(), m.degrees);
  }
}

TEST(ExpTruncate, SpecValues) {
  EXPECT_EQ(exp_truncate(1).text(), "-C_1");
  EXPECT_EQ(exp_truncate(2).text(), "1/2 C_1^2 + C_2");
  EXPECT_EQ(exp_truncate(3).text(), "-1/6 C_1^3 - C_1 C_2 - 2 C_3");
  EXPECT_JACSTAB_ERROR(exp_truncate(0), ErrorCode::InputRange);
}

TEST(ExpTruncate, MatchesSeriesOracle) {
  const std::size_t partition_counts[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int g = 1; g <= 10; ++g) {
    const auto p = exp_truncate(g);
    EXPECT_EQ(p, oracle::exp_series(g)) << "g=" << g;
    EXPECT_EQ(p.terms().size(), partition_counts[g - 1]);
    EXPECT_EQ(partitions(g).size(), partition_counts[g - 1]);
    for (const auto& [e, c] : p.terms()) EXPECT_EQ(GradedAtomPoly::degree(e), g);
  }
}
