#include "jacstab/random_graphs.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace jacstab {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string vertex_id(std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 2) digits.insert(0, "0");
  return "v" + digits;
}

struct Draft {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  int markings = 0;
};

Draft random_tree(Rng& rng, const RandomGraphOptions& opts) {
  Draft d;
  const auto nv = static_cast<std::size_t>(
      uniform(rng, static_cast<int>(opts.min_vertices), static_cast<int>(opts.max_vertices)));
  for (std::size_t i = 0; i < nv; ++i) {
    d.vertices.push_back({vertex_id(i), uniform(rng, 0, opts.max_vertex_genus), {}});
    if (i > 0) d.edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(i) - 1)), i);
  }
  for (std::size_t i = 0; i < nv; ++i) {
    for (int l = uniform(rng, 0, opts.max_loops); l > 0; --l) d.edges.emplace_back(i, i);
  }
  d.markings = uniform(rng, opts.min_markings, std::max(opts.min_markings, opts.max_markings));
  for (int leg = 1; leg <= d.markings; ++leg) {
    d.vertices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(nv) - 1))].legs.push_back(leg);
  }
  return d;
}

DualGraph finish(Draft d) {
  std::vector<int> valence(d.vertices.size(), 0);
  for (auto [a, b] : d.edges) {
    ++valence[a];
    ++valence[b];
  }
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    auto& vx = d.vertices[v];
    while (2 * vx.genus - 2 + valence[v] + static_cast<int>(vx.legs.size()) <= 0) ++vx.genus;
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : d.edges) edges.emplace_back(d.vertices[a].id, d.vertices[b].id);
  return DualGraph(d.markings, std::move(d.vertices), edges);
}

}  // namespace

DualGraph random_treelike_graph(Rng& rng, const RandomGraphOptions& opts) { return finish(random_tree(rng, opts)); }

DualGraph random_stable_graph(Rng& rng, const RandomGraphOptions& opts) {
  Draft d = random_tree(rng, opts);
  const int nv = static_cast<int>(d.vertices.size());
  for (int e = uniform(rng, 0, opts.max_extra_edges); e > 0; --e) {
    d.edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, nv - 1)),
                         static_cast<std::size_t>(uniform(rng, 0, nv - 1)));
  }
  return finish(std::move(d));
}

Multidegree random_zero_sum_multidegree(Rng& rng, const DualGraph& graph, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  Multidegree m{std::vector<std::int64_t>(graph.vertex_count(), 0)};
  std::int64_t total = 0;
  for (auto& x : m.degrees) {
    x = dist(rng);
    total += x;
  }
  m.degrees.back() -= total;
  return m;
}

DualGraph banana_graph(bool marking_one_on_v1) {
  std::vector<Vertex> vs;
  if (marking_one_on_v1) {
    vs = {{"v1", 0, {1, 2}}, {"v2", 1, {}}};
  } else {
    vs = {{"v1", 0, {2}}, {"v2", 1, {1}}};
  }
  return DualGraph(2, std::move(vs), {{"v1", "v2"}, {"v1", "v2"}});
}

std::vector<DualGraph> two_vertex_compact_graphs(int max_genus, int max_legs) {
  std::vector<DualGraph> out;
  for (int g1 = 0; g1 <= max_genus; ++g1) {
    for (int g2 = 0; g1 + g2 <= max_genus; ++g2) {
      for (int a = 1; a <= max_legs; ++a) {
        for (int b = 0; b <= max_legs; ++b) {
          for (bool first_on_v1 : {true, false}) {
            Vertex v1{"v1", g1, {}};
            Vertex v2{"v2", g2, {}};
            auto& with_first = first_on_v1 ? v1 : v2;
            auto& other = first_on_v1 ? v2 : v1;
            for (int i = 1; i <= a; ++i) with_first.legs.push_back(i);
            for (int i = a + 1; i <= a + b; ++i) other.legs.push_back(i);
            DualGraph graph(a + b, {v1, v2}, {{"v1", "v2"}});
            if (graph.is_valid()) out.push_back(std::move(graph));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace jacstab
