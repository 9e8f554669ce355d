#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jacstab {

using VertexIndex = std::size_t;

/// Maximum number of components a dual graph may have. Subcurves are bitsets.
inline constexpr std::size_t kMaxVertices = 64;

/// A set of vertices (irreducible components), i.e. a subcurve when nonempty.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr VertexSet single(VertexIndex v) { return VertexSet(std::uint64_t{1} << v); }
  static constexpr VertexSet first_n(std::size_t n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(VertexIndex v) const { return (bits_ >> v) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr void insert(VertexIndex v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(VertexIndex v) { bits_ &= ~(std::uint64_t{1} << v); }

  /// Complement inside a graph with `vertex_count` vertices.
  constexpr VertexSet complement(std::size_t vertex_count) const {
    return VertexSet(first_n(vertex_count).bits_ & ~bits_);
  }

  /// Members in increasing index order.
  std::vector<VertexIndex> members() const;

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;
  friend constexpr auto operator<=>(VertexSet a, VertexSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct Vertex {
  std::string id;
  int genus = 0;
  std::vector<int> legs;  // marking labels, kept sorted
};

struct Edge {
  VertexIndex a = 0;
  VertexIndex b = 0;
  bool is_loop() const { return a == b; }
};

/// One violated invariant reported by DualGraph::validate.
struct Violation {
  std::string code;
  std::string message;
};

struct Classification {
  bool treelike = false;
  bool compact_type = false;
  bool banana_like = false;
};

/// Dual graph of a stable marked curve: vertices weighted by geometric genus,
/// edges are nodes (loops allowed), legs are marked points 1..n.
///
/// Vertices are stored sorted by id, so vertex indices, multidegree vectors and
/// every emitted set are deterministic. Construction only rejects structural
/// defects (duplicate ids, unknown edge endpoints, too many vertices); the
/// curve-theoretic invariants are reported by validate().
class DualGraph {
 public:
  DualGraph(int markings, std::vector<Vertex> vertices,
            const std::vector<std::pair<std::string, std::string>>& edges);

  int markings() const { return markings_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<VertexIndex> find(const std::string& id) const;
  VertexIndex index_of(const std::string& id) const;  // throws InvalidGraph

  /// Vertex carrying marking `label`; nullopt when absent.
  std::optional<VertexIndex> vertex_of_marking(int label) const;

  /// Arithmetic genus: sum of g(v) plus first Betti number.
  int genus() const;

  /// Edge endpoints at v; a loop contributes 2.
  int valence(VertexIndex v) const;
  int loops(VertexIndex v) const;
  /// g(v) + number of loops at v.
  int hat_genus(VertexIndex v) const;
  /// Number of edges joining two distinct vertices v and w.
  int edge_multiplicity(VertexIndex v, VertexIndex w) const;

  VertexSet all() const { return VertexSet::first_n(vertices_.size()); }

  std::vector<Violation> validate() const;
  bool is_valid() const { return validate().empty(); }

  /// Nodes joining Y to its complement. Throws EMPTY_OR_FULL.
  int kappa(VertexSet y) const;
  /// Degree of the dualizing sheaf restricted to Y. Throws EMPTY.
  int deg_omega(VertexSet y) const;
  /// Sum of g(v) over Y plus the first Betti number of the induced subgraph.
  int subcurve_genus(VertexSet y) const;

  /// Connected components of the subgraph induced on Y, ordered by lowest index.
  std::vector<VertexSet> components(VertexSet y) const;
  bool is_connected(VertexSet y) const { return components(y).size() <= 1; }

  Classification classify() const;

  /// Vertex ids of a subcurve, sorted.
  std::vector<std::string> ids(VertexSet y) const;
  /// Marking labels on the vertices of Y, sorted.
  std::vector<int> legs(VertexSet y) const;

 private:
  int markings_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

}  // namespace jacstab
