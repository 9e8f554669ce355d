#pragma once

#include <cstdint>
#include <random>

#include "jacstab/graph.hpp"
#include "jacstab/stability.hpp"

namespace jacstab {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 10;
  int max_vertex_genus = 2;
  int min_markings = 0;
  int max_markings = 4;
  /// Loops per vertex are drawn from [0, max_loops].
  int max_loops = 1;
  /// Extra edges between random vertex pairs on top of a spanning tree.
  /// Only used by random_stable_graph.
  int max_extra_edges = 3;
};

/// Random stable treelike graph: a random spanning tree decorated with loops,
/// genera and legs, with vertex genera raised where needed for stability.
/// Vertex ids are zero-padded ("v00", "v01", ...) so their order is the
/// creation order.
DualGraph random_treelike_graph(Rng& rng, const RandomGraphOptions& opts = {});

/// Random connected stable graph, possibly with cycles and multiple edges.
DualGraph random_stable_graph(Rng& rng, const RandomGraphOptions& opts = {});

/// Uniform entries in [-bound, bound], adjusted on one vertex to total zero.
Multidegree random_zero_sum_multidegree(Rng& rng, const DualGraph& graph, std::int64_t bound);

/// Two components v1 (genus 0) and v2 (genus 1) meeting in two nodes, with
/// legs {1,2} on v1, or leg 2 on v1 and leg 1 on v2.
DualGraph banana_graph(bool marking_one_on_v1 = true);

/// Every stable two-component compact-type graph with vertex genera summing to
/// at most max_genus and up to max_legs legs per side, marking 1 on either side.
std::vector<DualGraph> two_vertex_compact_graphs(int max_genus, int max_legs = 3);

}  // namespace jacstab
