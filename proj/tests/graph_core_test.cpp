#include <algorithm>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jacstab/random_graphs.hpp"
#include "oracles.hpp"

using namespace jacstab;
using fixtures::make_graph;
using fixtures::subset;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST(Validate, TwoVertexTreeIsValidWithGenusTwo) {
  const auto g = oracle::load_graph("two_vertex_tree.json");
  EXPECT_TRUE(g.validate().empty());
  EXPECT_EQ(g.genus(), 2);
}

TEST(Validate, IsolatedRationalPointIsUnstable) {
  const auto g = make_graph(0, {{"v1", 0, {}}}, {});
  const auto vs = g.validate();
  EXPECT_TRUE(has_code(vs, "UNSTABLE_VERTEX"));
  EXPECT_TRUE(has_code(vs, "UNSTABLE_CURVE"));
}

TEST(Validate, BananaGenusCountsTheCycle) {
  const auto g = oracle::load_graph("banana.json");
  EXPECT_TRUE(g.validate().empty());
  EXPECT_EQ(g.genus(), 2);
}

TEST(Validate, ReportsLegProblems) {
  const auto missing = make_graph(2, {{"a", 1, {1}}}, {});
  EXPECT_TRUE(has_code(missing.validate(), "LEG_MISSING"));
  const auto dup = make_graph(1, {{"a", 1, {1}}, {"b", 1, {1}}}, {{"a", "b"}});
  EXPECT_TRUE(has_code(dup.validate(), "LEG_DUPLICATE"));
  const auto range = make_graph(1, {{"a", 1, {1, 3}}}, {});
  EXPECT_TRUE(has_code(range.validate(), "LEG_OUT_OF_RANGE"));
}

TEST(Validate, Disconnected) {
  const auto g = make_graph(0, {{"a", 2, {}}, {"b", 2, {}}}, {});
  EXPECT_TRUE(has_code(g.validate(), "DISCONNECTED"));
}

TEST(Validate, StructuralDefectsThrow) {
  EXPECT_JACSTAB_ERROR(make_graph(0, {{"a", 1, {}}, {"a", 1, {}}}, {}), ErrorCode::InvalidGraph);
  EXPECT_JACSTAB_ERROR(make_graph(0, {{"a", 1, {}}}, {{"a", "zz"}}), ErrorCode::InvalidGraph);
}

TEST(Kappa, SpecValues) {
  const auto banana = oracle::load_graph("banana.json");
  EXPECT_EQ(banana.kappa(subset(banana, {"v1"})), 2);

  const auto path = oracle::load_graph("path3.json");
  EXPECT_EQ(path.kappa(subset(path, {"v2"})), 2);

  const auto loop = oracle::load_graph("tree_with_loop.json");
  const auto leaf = std::find_if(loop.vertices().begin(), loop.vertices().end(),
                                 [&](const Vertex& v) { return loop.loops(loop.index_of(v.id)) > 0; });
  ASSERT_NE(leaf, loop.vertices().end());
  EXPECT_EQ(loop.kappa(subset(loop, {leaf->id.c_str()})), 1);
}

TEST(Kappa, EmptyAndFullRejected) {
  const auto banana = oracle::load_graph("banana.json");
  EXPECT_JACSTAB_ERROR(banana.kappa(VertexSet{}), ErrorCode::EmptyOrFull);
  EXPECT_JACSTAB_ERROR(banana.kappa(banana.all()), ErrorCode::EmptyOrFull);
  EXPECT_JACSTAB_ERROR(banana.deg_omega(VertexSet{}), ErrorCode::Empty);
}

TEST(DegOmega, SpecValues) {
  const auto banana = oracle::load_graph("banana.json");
  EXPECT_EQ(banana.deg_omega(subset(banana, {"v1"})), 0);
  EXPECT_EQ(banana.deg_omega(banana.all()), 2);

  const auto smooth = oracle::load_graph("smooth_genus2.json");
  EXPECT_EQ(smooth.deg_omega(smooth.all()), 2);

  const auto tree = oracle::load_graph("two_vertex_tree.json");
  EXPECT_EQ(tree.deg_omega(subset(tree, {"v1"})), 1);
}

TEST(Classify, SpecValues) {
  const auto loop = oracle::load_graph("tree_with_loop.json").classify();
  EXPECT_TRUE(loop.treelike);
  EXPECT_FALSE(loop.compact_type);

  const auto banana = oracle::load_graph("banana.json").classify();
  EXPECT_FALSE(banana.treelike);
  EXPECT_TRUE(banana.banana_like);

  const auto smooth = oracle::load_graph("smooth_genus2.json").classify();
  EXPECT_TRUE(smooth.treelike);
  EXPECT_TRUE(smooth.compact_type);
}

class RandomGraphProperties : public ::testing::TestWithParam<int> {};

TEST_P(RandomGraphProperties, KappaComplementAndDegOmegaIdentities) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) * 7919U + 11U);
  RandomGraphOptions opts;
  opts.max_vertices = 7;
  for (int round = 0; round < 25; ++round) {
    const auto g = random_stable_graph(rng, opts);
    ASSERT_TRUE(g.validate().empty());

    // Genus identity: sum of vertex genera plus the first Betti number.
    const int betti = static_cast<int>(g.edges().size()) - static_cast<int>(g.vertex_count()) + 1;
    int sum = betti;
    for (const auto& v : g.vertices()) sum += v.genus;
    EXPECT_EQ(g.genus(), sum);

    EXPECT_EQ(g.deg_omega(g.all()), 2 * g.genus() - 2);
    const auto full = g.all().bits();
    for (std::uint64_t bits = 1; bits < full; ++bits) {
      const VertexSet y(bits);
      EXPECT_EQ(g.kappa(y), g.kappa(y.complement(g.vertex_count())));
      EXPECT_EQ(g.kappa(y), oracle::crossing_edges(g, bits));
      EXPECT_EQ(g.deg_omega(y), oracle::deg_omega(g, bits));
      if (g.is_connected(y)) EXPECT_EQ(g.deg_omega(y), 2 * g.subcurve_genus(y) - 2 + g.kappa(y));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphProperties, ::testing::Range(0, 4));

TEST(Classify, RandomTreelikeGraphsAreTreelike) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_treelike_graph(rng);
    EXPECT_TRUE(g.validate().empty());
    EXPECT_TRUE(g.classify().treelike);
    bool no_loops = true;
    for (const auto& e : g.edges()) no_loops = no_loops && !e.is_loop();
    EXPECT_EQ(g.classify().compact_type, no_loops);
  }
}

TEST(VertexOrder, IdsAreSorted) {
  const auto g = make_graph(1, {{"z", 1, {1}}, {"a", 1, {}}}, {{"z", "a"}});
  EXPECT_EQ(g.vertex(0).id, "a");
  EXPECT_EQ(g.vertex(1).id, "z");
  EXPECT_EQ(*g.vertex_of_marking(1), 1U);
}
