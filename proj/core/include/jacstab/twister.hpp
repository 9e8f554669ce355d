#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jacstab/graph.hpp"
#include "jacstab/stability.hpp"

namespace jacstab {

/// Coefficients gamma_v of the twister O(sum gamma_v X_v), one per vertex.
/// Defined up to the all-ones vector; stored with gamma(root) = 0.
struct TwisterVector {
  std::vector<std::int64_t> gamma;

  /// Shifts so that gamma[root] == 0.
  TwisterVector normalized(VertexIndex root) const;

  friend bool operator==(const TwisterVector&, const TwisterVector&) = default;
};

/// L[v][w] = -(edges between v and w), L[v][v] = non-loop endpoints at v.
using Laplacian = std::vector<std::vector<std::int64_t>>;

Laplacian laplacian(const DualGraph& graph);

/// Multidegree of the twister: -L * gamma.
Multidegree twist_multidegree(const DualGraph& graph, const TwisterVector& gamma);

/// Twister supported on the vertices of Y with coefficient `coefficient`.
TwisterVector indicator_twister(const DualGraph& graph, VertexSet y, std::int64_t coefficient = 1);

/// One leaf peel: the leaf's current degree is pushed across its last edge by
/// twisting with `coefficient` times the branch hanging off that edge.
struct PeelStep {
  VertexIndex leaf = 0;
  VertexSet branch;
  std::int64_t coefficient = 0;
  Multidegree after;
};

struct Reduction {
  TwisterVector gamma;  // twist_multidegree(gamma) + m == 0
  Multidegree result;   // always the zero multidegree
  VertexIndex root = 0;
  std::vector<PeelStep> trace;
};

/// Default root: vertex carrying marking 1, else vertex 0.
VertexIndex default_root(const DualGraph& graph);

/// Reduces a total-zero multidegree on a treelike graph to zero by peeling
/// leaves towards `root`. Zero-degree peels are omitted from the trace.
/// Throws NOT_TREELIKE, NONZERO_TOTAL.
Reduction reduce_treelike(const DualGraph& graph, const Multidegree& m,
                          std::optional<VertexIndex> root = std::nullopt);

/// Same, peeling exactly the vertices of `peel_order` (every vertex but the
/// root, each a leaf of what remains when it is peeled). Throws INVALID_PEEL_ORDER.
Reduction reduce_treelike(const DualGraph& graph, const Multidegree& m,
                          std::span<const VertexIndex> peel_order);

/// Twist coefficient attached to a non-loop edge of a treelike graph.
struct BranchCoefficient {
  std::size_t edge = 0;    // index into DualGraph::edges()
  VertexSet side;          // side not containing marking 1
  int branch_genus = 0;    // h
  std::vector<int> legs;   // A
  std::int64_t coefficient = 0;
};

/// c_e = sum of tau over legs of Z_e - k deg_omega(Z_e), for every non-loop edge.
/// Throws NOT_TREELIKE, TAU_SUM.
std::vector<BranchCoefficient> branch_coefficients(const DualGraph& graph, const TauData& t);

/// Fiber multidegree of the twisted bundle: m0 + sum_e c_e * twist(1_{Z_e}).
Multidegree boundary_multidegree_Lk(const DualGraph& graph, const TauData& t);

}  // namespace jacstab
