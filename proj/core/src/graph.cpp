#include "jacstab/graph.hpp"

#include <algorithm>
#include <numeric>

#include "jacstab/error.hpp"

namespace jacstab {

std::vector<VertexIndex> VertexSet::members() const {
  std::vector<VertexIndex> out;
  out.reserve(size());
  for (auto bits = bits_; bits != 0; bits &= bits - 1) {
    out.push_back(static_cast<VertexIndex>(std::countr_zero(bits)));
  }
  return out;
}

DualGraph::DualGraph(int markings, std::vector<Vertex> vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges)
    : markings_(markings), vertices_(std::move(vertices)) {
  if (markings_ < 0) throw Error(ErrorCode::InvalidGraph, "negative number of markings");
  if (vertices_.size() > kMaxVertices) {
    throw Error(ErrorCode::InvalidGraph,
                "at most " + std::to_string(kMaxVertices) + " vertices are supported");
  }
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i].id == vertices_[i - 1].id) {
      throw Error(ErrorCode::InvalidGraph, "duplicate vertex id '" + vertices_[i].id + "'");
    }
  }
  for (auto& v : vertices_) std::sort(v.legs.begin(), v.legs.end());

  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (ib < ia) std::swap(ia, ib);
    edges_.push_back({ia, ib});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
}

std::optional<VertexIndex> DualGraph::find(const std::string& id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, const std::string& key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

VertexIndex DualGraph::index_of(const std::string& id) const {
  if (auto v = find(id)) return *v;
  throw Error(ErrorCode::InvalidGraph, "unknown vertex id '" + id + "'");
}

std::optional<VertexIndex> DualGraph::vertex_of_marking(int label) const {
  for (VertexIndex v = 0; v < vertices_.size(); ++v) {
    const auto& legs = vertices_[v].legs;
    if (std::binary_search(legs.begin(), legs.end(), label)) return v;
  }
  return std::nullopt;
}

int DualGraph::genus() const {
  int total = 0;
  for (const auto& v : vertices_) total += v.genus;
  return total + static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
}

int DualGraph::valence(VertexIndex v) const {
  int val = 0;
  for (const auto& e : edges_) val += (e.a == v) + (e.b == v);
  return val;
}

int DualGraph::loops(VertexIndex v) const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.is_loop() && e.a == v; }));
}

int DualGraph::hat_genus(VertexIndex v) const { return vertex(v).genus + loops(v); }

int DualGraph::edge_multiplicity(VertexIndex v, VertexIndex w) const {
  if (v == w) return 0;
  if (w < v) std::swap(v, w);
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.a == v && e.b == w; }));
}

std::vector<Violation> DualGraph::validate() const {
  std::vector<Violation> out;
  if (vertices_.empty()) {
    out.push_back({"NO_VERTICES", "graph has no vertices"});
    return out;
  }

  for (const auto& v : vertices_) {
    if (v.genus < 0) out.push_back({"NEGATIVE_GENUS", "vertex '" + v.id + "' has negative genus"});
  }

  if (!is_connected(all())) out.push_back({"DISCONNECTED", "graph is not connected"});

  std::vector<int> seen(static_cast<std::size_t>(markings_) + 1, 0);
  for (const auto& v : vertices_) {
    for (int leg : v.legs) {
      if (leg < 1 || leg > markings_) {
        out.push_back({"LEG_OUT_OF_RANGE", "leg " + std::to_string(leg) + " on vertex '" + v.id +
                                               "' is outside 1.." + std::to_string(markings_)});
      } else {
        ++seen[static_cast<std::size_t>(leg)];
      }
    }
  }
  for (int label = 1; label <= markings_; ++label) {
    const int count = seen[static_cast<std::size_t>(label)];
    if (count == 0) {
      out.push_back({"LEG_MISSING", "marking " + std::to_string(label) + " is not carried by any vertex"});
    } else if (count > 1) {
      out.push_back({"LEG_DUPLICATE", "marking " + std::to_string(label) + " is used " +
                                          std::to_string(count) + " times"});
    }
  }

  for (VertexIndex v = 0; v < vertices_.size(); ++v) {
    const int weight =
        2 * vertices_[v].genus - 2 + valence(v) + static_cast<int>(vertices_[v].legs.size());
    if (weight <= 0) {
      out.push_back({"UNSTABLE_VERTEX", "vertex '" + vertices_[v].id + "' violates 2g(v)-2+val(v)+#legs(v) > 0 (value " +
                                            std::to_string(weight) + ")"});
    }
  }

  if (2 * genus() - 2 + markings_ <= 0) {
    out.push_back({"UNSTABLE_CURVE", "2g-2+n = " + std::to_string(2 * genus() - 2 + markings_) + " is not positive"});
  }
  return out;
}

int DualGraph::kappa(VertexSet y) const {
  if (y.empty() || y == all()) throw Error(ErrorCode::EmptyOrFull, "kappa needs a proper nonempty subcurve");
  int count = 0;
  for (const auto& e : edges_) count += (y.contains(e.a) != y.contains(e.b));
  return count;
}

int DualGraph::deg_omega(VertexSet y) const {
  if (y.empty()) throw Error(ErrorCode::Empty, "deg_omega needs a nonempty subcurve");
  // sum over Y of 2g(v)-2+val(v): internal edges count twice, crossing edges once
  int total = 0;
  for (auto v : y.members()) total += 2 * vertices_[v].genus - 2;
  for (const auto& e : edges_) {
    const bool in_a = y.contains(e.a);
    const bool in_b = y.contains(e.b);
    total += static_cast<int>(in_a) + static_cast<int>(in_b);
  }
  return total;
}

int DualGraph::subcurve_genus(VertexSet y) const {
  if (y.empty()) return 0;
  int total = 0;
  for (auto v : y.members()) total += vertices_[v].genus;
  int internal = 0;
  for (const auto& e : edges_) internal += (y.contains(e.a) && y.contains(e.b));
  const int comps = static_cast<int>(components(y).size());
  return total + internal - static_cast<int>(y.size()) + comps;
}

std::vector<VertexSet> DualGraph::components(VertexSet y) const {
  std::vector<VertexSet> out;
  VertexSet remaining = y;
  while (!remaining.empty()) {
    const auto start = static_cast<VertexIndex>(std::countr_zero(remaining.bits()));
    VertexSet comp = VertexSet::single(start);
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : edges_) {
        if (!y.contains(e.a) || !y.contains(e.b)) continue;
        if (comp.contains(e.a) != comp.contains(e.b)) {
          comp.insert(e.a);
          comp.insert(e.b);
          grew = true;
        }
      }
    }
    out.push_back(comp);
    remaining = VertexSet(remaining.bits() & ~comp.bits());
  }
  return out;
}

Classification DualGraph::classify() const {
  Classification c;
  int non_loop = 0;
  int loop_count = 0;
  bool multi = false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].is_loop()) {
      ++loop_count;
      continue;
    }
    ++non_loop;
    if (i > 0 && edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) multi = true;
  }
  // connected + |E| = |V|-1 on the loopless simple reduction means a tree
  c.treelike = !multi && is_connected(all()) && non_loop + 1 == static_cast<int>(vertices_.size());
  c.compact_type = c.treelike && loop_count == 0;
  c.banana_like = vertices_.size() == 2 && loop_count == 0 && non_loop >= 2;
  return c;
}

std::vector<std::string> DualGraph::ids(VertexSet y) const {
  std::vector<std::string> out;
  for (auto v : y.members()) out.push_back(vertices_[v].id);
  return out;  // already sorted: indices follow id order
}

std::vector<int> DualGraph::legs(VertexSet y) const {
  std::vector<int> out;
  for (auto v : y.members()) out.insert(out.end(), vertices_[v].legs.begin(), vertices_[v].legs.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace jacstab
