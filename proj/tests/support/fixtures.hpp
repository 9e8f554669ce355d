#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "jacstab/error.hpp"
#include "jacstab/graph.hpp"

namespace fixtures {

inline jacstab::DualGraph make_graph(int n, std::vector<jacstab::Vertex> vertices,
                                     std::vector<std::pair<std::string, std::string>> edges) {
  return jacstab::DualGraph(n, std::move(vertices), edges);
}

inline jacstab::VertexSet subset(const jacstab::DualGraph& g, std::initializer_list<const char*> ids) {
  jacstab::VertexSet y;
  for (const char* id : ids) y.insert(g.index_of(id));
  return y;
}

}  // namespace fixtures

#define EXPECT_JACSTAB_ERROR(stmt, expected_code)                                   \
  do {                                                                              \
    try {                                                                           \
      stmt;                                                                         \
      ADD_FAILURE() << "expected " << jacstab::to_string(expected_code);            \
    } catch (const jacstab::Error& e_) {                                            \
      EXPECT_EQ(jacstab::to_string(e_.code()), jacstab::to_string(expected_code)); \
    }                                                                               \
  } while (false)
