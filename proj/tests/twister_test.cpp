#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jacstab/random_graphs.hpp"
#include "jacstab/twister.hpp"
#include "oracles.hpp"

using namespace jacstab;
using fixtures::subset;

namespace {

Multidegree md(std::vector<std::int64_t> d) { return Multidegree{std::move(d)}; }

Multidegree zero(const DualGraph& g) { return md(std::vector<std::int64_t>(g.vertex_count(), 0)); }

// Random peel order: repeatedly remove a random leaf other than the root.
std::vector<VertexIndex> random_peel_order(Rng& rng, const DualGraph& g, VertexIndex root) {
  std::vector<VertexIndex> order;
  VertexSet alive = g.all();
  while (alive.size() > 1) {
    std::vector<VertexIndex> leaves;
    for (auto v : alive.members()) {
      if (v == root) continue;
      int degree = 0;
      for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        if ((e.a == v && alive.contains(e.b)) || (e.b == v && alive.contains(e.a))) ++degree;
      }
      if (degree <= 1) leaves.push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
    const auto leaf = leaves[pick(rng)];
    order.push_back(leaf);
    alive.erase(leaf);
  }
  return order;
}

TauData random_tau(Rng& rng, const DualGraph& g, std::int64_t k, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> pick(-bound, bound);
  TauData t{std::vector<std::int64_t>(static_cast<std::size_t>(g.markings())), k};
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < t.tau.size(); ++i) sum += (t.tau[i] = pick(rng));
  t.tau.back() = k * (2 * g.genus() - 2) - sum;
  return t;
}

RandomGraphOptions marked(std::size_t max_vertices) {
  RandomGraphOptions o;
  o.max_vertices = max_vertices;
  o.min_markings = 1;
  return o;
}

}  // namespace

TEST(TwistMultidegree, SpecValues) {
  const auto tree = oracle::load_graph("two_vertex_tree.json");
  EXPECT_EQ(twist_multidegree(tree, {{0, 1}}), md({1, -1}));
  EXPECT_EQ(twist_multidegree(tree, {{1, 1}}), zero(tree));

  const auto banana = oracle::load_graph("banana.json");
  EXPECT_EQ(twist_multidegree(banana, {{0, 1}}), md({2, -2}));
}

TEST(TwistMultidegree, IsMinusLaplacianAndShiftInvariant) {
  Rng rng(9);
  std::uniform_int_distribution<std::int64_t> pick(-4, 4);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_stable_graph(rng);
    const auto l = oracle::laplacian(g);
    EXPECT_EQ(laplacian(g), l);
    TwisterVector gamma{std::vector<std::int64_t>(g.vertex_count())};
    for (auto& x : gamma.gamma) x = pick(rng);
    const auto m = twist_multidegree(g, gamma);
    EXPECT_EQ(m.total(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      std::int64_t lg = 0;
      for (std::size_t w = 0; w < g.vertex_count(); ++w) lg += l[v][w] * gamma.gamma[w];
      EXPECT_EQ(m.degrees[v], -lg);
    }
    auto shifted = gamma;
    for (auto& x : shifted.gamma) x += 3;
    EXPECT_EQ(twist_multidegree(g, shifted), m);
  }
}

TEST(ReduceTreelike, PathExampleTrace) {
  const auto path = oracle::load_graph("path3.json");
  const auto r = reduce_treelike(path, md({2, -3, 1}));
  EXPECT_EQ(r.root, path.index_of("v3"));
  EXPECT_EQ(r.gamma.gamma, (std::vector<std::int64_t>{1, -1, 0}));
  EXPECT_EQ(r.result, zero(path));
  ASSERT_EQ(r.trace.size(), 2U);
  EXPECT_EQ(r.trace[0].after, md({0, -1, 1}));
  EXPECT_EQ(r.trace[1].after, md({0, 0, 0}));
}

TEST(ReduceTreelike, ZeroInputHasEmptyTrace) {
  const auto path = oracle::load_graph("path3.json");
  const auto r = reduce_treelike(path, zero(path));
  EXPECT_EQ(r.gamma.gamma, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_TRUE(r.trace.empty());
}

TEST(ReduceTreelike, StarExample) {
  const auto star = oracle::load_graph("star.json");
  Multidegree m = zero(star);
  m.degrees[star.index_of("a")] = 1;
  m.degrees[star.index_of("b")] = 1;
  m.degrees[star.index_of("d")] = -2;
  const auto r = reduce_treelike(star, m, star.index_of("c"));
  EXPECT_EQ(r.gamma.gamma[star.index_of("a")], 1);
  EXPECT_EQ(r.gamma.gamma[star.index_of("b")], 1);
  EXPECT_EQ(r.gamma.gamma[star.index_of("d")], -2);
  EXPECT_EQ(r.gamma.gamma[star.index_of("c")], 0);
}

TEST(ReduceTreelike, Errors) {
  const auto banana = oracle::load_graph("banana.json");
  EXPECT_JACSTAB_ERROR(reduce_treelike(banana, md({1, -1})), ErrorCode::NotTreelike);
  const auto path = oracle::load_graph("path3.json");
  EXPECT_JACSTAB_ERROR(reduce_treelike(path, md({1, 0, 0})), ErrorCode::NonzeroTotal);
  const std::vector<VertexIndex> bad{1, 0};
  EXPECT_JACSTAB_ERROR(reduce_treelike(path, md({2, -3, 1}), bad), ErrorCode::InvalidPeelOrder);
}

TEST(ReduceTreelike, AgreesWithRationalLinearSolve) {
  Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_treelike_graph(rng, marked(12));
    const auto m = random_zero_sum_multidegree(rng, g, 8);
    const auto r = reduce_treelike(g, m);
    EXPECT_EQ(r.result, zero(g));
    EXPECT_EQ(r.gamma.gamma[r.root], 0);
    // Twisting by gamma cancels m: L gamma = m.
    const auto solved = oracle::solve_laplacian(g, m.degrees, r.root);
    ASSERT_TRUE(solved);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) EXPECT_EQ((*solved)[v], Rational(r.gamma.gamma[v]));
    auto total = twist_multidegree(g, r.gamma);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) total.degrees[v] += m.degrees[v];
    EXPECT_EQ(total, zero(g));
  }
}

TEST(ReduceTreelike, PeelOrderIndependent) {
  Rng rng(202);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_treelike_graph(rng, marked(10));
    const auto m = random_zero_sum_multidegree(rng, g, 6);
    const auto reference = reduce_treelike(g, m);
    for (int trial = 0; trial < 5; ++trial) {
      const auto order = random_peel_order(rng, g, reference.root);
      const auto r = reduce_treelike(g, m, order);
      EXPECT_EQ(r.result, zero(g));
      EXPECT_EQ(r.gamma.normalized(reference.root), reference.gamma);
    }
  }
}

TEST(ReduceTreelike, ZeroIsTheOnlyQStablePointOfTheOrbit) {
  Rng rng(303);
  RandomGraphOptions opts = marked(4);
  opts.max_vertex_genus = 1;
  for (int i = 0; i < 30; ++i) {
    const auto g = random_treelike_graph(rng, opts);
    const auto m0 = random_zero_sum_multidegree(rng, g, 3);
    const auto root = default_root(g);
    const auto nv = g.vertex_count();
    // Orbit points m0 + twist(gamma) with gamma(root) = 0 and |gamma_v| <= 3.
    std::vector<std::int64_t> gamma(nv, -3);
    gamma[root] = 0;
    int stable_hits = 0;
    while (true) {
      auto m = twist_multidegree(g, {gamma});
      for (std::size_t v = 0; v < nv; ++v) m.degrees[v] += m0.degrees[v];
      if (oracle::is_stable(g, oracle::Pol::CanonicalZero, m.degrees, oracle::Mode::QStable, root)) {
        ++stable_hits;
        EXPECT_EQ(m, zero(g));
      }
      std::size_t v = 0;
      for (; v < nv; ++v) {
        if (v == root) continue;
        if (++gamma[v] <= 3) break;
        gamma[v] = -3;
      }
      if (v == nv) break;
    }
    const auto r = reduce_treelike(g, m0);
    const bool gamma_in_box = std::all_of(r.gamma.gamma.begin(), r.gamma.gamma.end(),
                                          [](std::int64_t x) { return x >= -3 && x <= 3; });
    EXPECT_EQ(stable_hits, gamma_in_box ? 1 : 0);
  }
}

TEST(BranchCoefficients, SpecValues) {
  const auto tree = oracle::load_graph("two_vertex_tree.json");
  auto c = branch_coefficients(tree, {{5, -3}, 1});
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c[0].coefficient, -4);
  EXPECT_EQ(c[0].branch_genus, 1);
  EXPECT_EQ(c[0].legs, std::vector<int>{2});
  EXPECT_EQ(c[0].side, subset(tree, {"v2"}));

  c = branch_coefficients(tree, {{1, -1}, 0});
  EXPECT_EQ(c[0].coefficient, -1);

  EXPECT_EQ(boundary_multidegree_Lk(tree, {{5, -3}, 1}), zero(tree));
  const auto path = oracle::load_graph("path3.json");
  EXPECT_EQ(boundary_multidegree_Lk(path, {{0}, 0}), zero(path));

  EXPECT_JACSTAB_ERROR(branch_coefficients(oracle::load_graph("banana.json"), {{1, -1}, 0}),
                       ErrorCode::NotTreelike);
  EXPECT_JACSTAB_ERROR(branch_coefficients(tree, {{1, 1}, 0}), ErrorCode::TauSum);
}

TEST(BranchCoefficients, ClosedFormOnEveryEdge) {
  Rng rng(404);
  std::uniform_int_distribution<std::int64_t> pick_k(-2, 2);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_treelike_graph(rng, marked(8));
    const auto t = random_tau(rng, g, pick_k(rng), 5);
    const auto first = *g.vertex_of_marking(1);
    for (const auto& bc : branch_coefficients(g, t)) {
      const auto& e = g.edges()[bc.edge];
      EXPECT_FALSE(bc.side.contains(first));
      EXPECT_NE(bc.side.contains(e.a), bc.side.contains(e.b));
      std::int64_t h = 0;
      std::int64_t sum_a = 0;
      std::vector<int> legs;
      for (auto v : bc.side.members()) {
        h += g.vertex(v).genus + g.loops(v);
        for (int l : g.vertex(v).legs) {
          legs.push_back(l);
          sum_a += t.tau[static_cast<std::size_t>(l - 1)];
        }
      }
      std::sort(legs.begin(), legs.end());
      EXPECT_EQ(bc.branch_genus, h);
      EXPECT_EQ(bc.legs, legs);
      EXPECT_EQ(bc.coefficient, t.k * (1 - 2 * h) + sum_a);
      EXPECT_EQ(bc.coefficient, sum_a - t.k * oracle::deg_omega(g, bc.side.bits()));
      ++checked;
    }
    EXPECT_EQ(boundary_multidegree_Lk(g, t), zero(g));
  }
  EXPECT_GT(checked, 200);
}

TEST(BranchCoefficients, BalancedMeansAllZero) {
  Rng rng(505);
  int balanced = 0;
  for (int i = 0; i < 400; ++i) {
    const auto g = random_treelike_graph(rng, marked(6));
    const auto t = random_tau(rng, g, 0, 1);
    if (!is_balanced(g, t).pass) continue;
    ++balanced;
    for (const auto& bc : branch_coefficients(g, t)) EXPECT_EQ(bc.coefficient, 0);
  }
  EXPECT_GT(balanced, 0);
}
