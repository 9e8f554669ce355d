#include "jacstab/twister.hpp"

#include <algorithm>

#include "jacstab/error.hpp"

namespace jacstab {

namespace {

void require_treelike(const DualGraph& graph) {
  if (!graph.classify().treelike) {
    throw Error(ErrorCode::NotTreelike, "graph has a non-separating edge between distinct vertices");
  }
}

// Vertices still present that have exactly one non-loop edge into `remaining`.
bool is_leaf_of(const DualGraph& graph, VertexSet remaining, VertexIndex v, VertexIndex* neighbor) {
  int count = 0;
  for (const auto& e : graph.edges()) {
    if (e.is_loop()) continue;
    if (e.a == v && remaining.contains(e.b)) {
      ++count;
      *neighbor = e.b;
    } else if (e.b == v && remaining.contains(e.a)) {
      ++count;
      *neighbor = e.a;
    }
  }
  return count == 1;
}

Multidegree add(Multidegree a, const Multidegree& b) {
  for (std::size_t i = 0; i < a.degrees.size(); ++i) a.degrees[i] += b.degrees[i];
  return a;
}

VertexSet side_of_edge(const DualGraph& graph, std::size_t edge_index) {
  // component of the edge's first endpoint once the edge is removed
  const auto& cut = graph.edges()[edge_index];
  VertexSet side = VertexSet::single(cut.a);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
      if (i == edge_index) continue;
      const auto& e = graph.edges()[i];
      if (side.contains(e.a) != side.contains(e.b)) {
        side.insert(e.a);
        side.insert(e.b);
        grew = true;
      }
    }
  }
  return side;
}

}  // namespace

TwisterVector TwisterVector::normalized(VertexIndex root) const {
  TwisterVector out = *this;
  const auto shift = gamma.at(root);
  for (auto& x : out.gamma) x -= shift;
  return out;
}

Laplacian laplacian(const DualGraph& graph) {
  const auto nv = graph.vertex_count();
  Laplacian lap(nv, std::vector<std::int64_t>(nv, 0));
  for (const auto& e : graph.edges()) {
    if (e.is_loop()) continue;
    lap[e.a][e.b] -= 1;
    lap[e.b][e.a] -= 1;
    lap[e.a][e.a] += 1;
    lap[e.b][e.b] += 1;
  }
  return lap;
}

Multidegree twist_multidegree(const DualGraph& graph, const TwisterVector& gamma) {
  const auto lap = laplacian(graph);
  const auto nv = graph.vertex_count();
  if (gamma.gamma.size() != nv) {
    throw Error(ErrorCode::DegreeMismatch, "twister needs one coefficient per vertex");
  }
  Multidegree m{std::vector<std::int64_t>(nv, 0)};
  for (std::size_t v = 0; v < nv; ++v) {
    std::int64_t acc = 0;
    for (std::size_t w = 0; w < nv; ++w) acc += lap[v][w] * gamma.gamma[w];
    m.degrees[v] = -acc;
  }
  return m;
}

TwisterVector indicator_twister(const DualGraph& graph, VertexSet y, std::int64_t coefficient) {
  TwisterVector t{std::vector<std::int64_t>(graph.vertex_count(), 0)};
  for (auto v : y.members()) t.gamma[v] = coefficient;
  return t;
}

VertexIndex default_root(const DualGraph& graph) {
  if (auto v = graph.vertex_of_marking(1)) return *v;
  return 0;
}

Reduction reduce_treelike(const DualGraph& graph, const Multidegree& m, std::optional<VertexIndex> root) {
  require_treelike(graph);
  const auto nv = graph.vertex_count();
  const VertexIndex r = root.value_or(default_root(graph));
  if (r >= nv) throw Error(ErrorCode::InvalidPeelOrder, "root vertex out of range");

  // smallest-index leaf first
  std::vector<VertexIndex> order;
  VertexSet remaining = graph.all();
  while (remaining.size() > 1) {
    bool found = false;
    for (auto v : remaining.members()) {
      VertexIndex neighbor = 0;
      if (v != r && is_leaf_of(graph, remaining, v, &neighbor)) {
        order.push_back(v);
        remaining.erase(v);
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::NotTreelike, "no leaf available while peeling");
  }
  return reduce_treelike(graph, m, order);
}

Reduction reduce_treelike(const DualGraph& graph, const Multidegree& m,
                          std::span<const VertexIndex> peel_order) {
  require_treelike(graph);
  const auto nv = graph.vertex_count();
  if (m.degrees.size() != nv) throw Error(ErrorCode::DegreeMismatch, "multidegree size mismatch");
  if (m.total() != 0) {
    throw Error(ErrorCode::NonzeroTotal, "multidegree total is " + std::to_string(m.total()));
  }
  if (peel_order.size() + 1 != nv) {
    throw Error(ErrorCode::InvalidPeelOrder, "peel order must list every vertex except the root");
  }

  Reduction out;
  out.gamma.gamma.assign(nv, 0);
  out.result = m;

  VertexSet remaining = graph.all();
  std::vector<VertexSet> hanging(nv);  // vertices already folded into each vertex's branch
  for (VertexIndex v = 0; v < nv; ++v) hanging[v] = VertexSet::single(v);

  for (auto leaf : peel_order) {
    VertexIndex neighbor = 0;
    if (leaf >= nv || !remaining.contains(leaf) || !is_leaf_of(graph, remaining, leaf, &neighbor)) {
      throw Error(ErrorCode::InvalidPeelOrder, "vertex " + std::to_string(leaf) + " is not a leaf when peeled");
    }
    const VertexSet branch = hanging[leaf];
    const std::int64_t c = out.result.degrees[leaf];
    if (c != 0) {
      out.result = add(out.result, twist_multidegree(graph, indicator_twister(graph, branch, c)));
      for (auto w : branch.members()) out.gamma.gamma[w] += c;
      out.trace.push_back({leaf, branch, c, out.result});
    }
    hanging[neighbor] = hanging[neighbor] | branch;
    remaining.erase(leaf);
  }
  out.root = remaining.members().front();
  return out;
}

std::vector<BranchCoefficient> branch_coefficients(const DualGraph& graph, const TauData& t) {
  require_treelike(graph);
  require_theta_tau(graph, t);
  const VertexIndex anchor = default_root(graph);
  std::vector<BranchCoefficient> out;
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    if (graph.edges()[i].is_loop()) continue;
    VertexSet side = side_of_edge(graph, i);
    if (side.contains(anchor)) side = side.complement(graph.vertex_count());

    BranchCoefficient bc;
    bc.edge = i;
    bc.side = side;
    bc.branch_genus = graph.subcurve_genus(side);
    bc.legs = graph.legs(side);
    std::int64_t tau_sum = 0;
    for (int leg : bc.legs) tau_sum += t.tau[static_cast<std::size_t>(leg - 1)];
    bc.coefficient = tau_sum - t.k * graph.deg_omega(side);
    out.push_back(std::move(bc));
  }
  return out;
}

Multidegree boundary_multidegree_Lk(const DualGraph& graph, const TauData& t) {
  const auto coeffs = branch_coefficients(graph, t);
  Multidegree m = base_multidegree(graph, t);
  for (const auto& bc : coeffs) {
    m = add(m, twist_multidegree(graph, indicator_twister(graph, bc.side, bc.coefficient)));
  }
  return m;
}

}  // namespace jacstab
