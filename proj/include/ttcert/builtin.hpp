#pragma once

// Built-in fixtures used by the command line driver and the test suite.

#include <string>

#include "ttcert/graph.hpp"
#include "ttcert/graph_map.hpp"

namespace ttcert {

inline Graph rose_graph(int petals, const std::string& vertex = "v0") {
  Graph g;
  Vertex v = g.add_vertex(vertex);
  for (int i = 0; i < petals; ++i)
    g.add_edge(std::string(1, static_cast<char>('a' + i)), v, v);
  return g;
}

// a -> b -> c -> ab on the rose with three petals. Expansion factor is the
// plastic number, the real root of x^3 = x + 1.
inline GraphMap plastic_map() {
  Graph g = rose_graph(3);
  return GraphMap::build(
      g, {parse_path(g, "b"), parse_path(g, "c"), parse_path(g, "ab")},
      "plastic");
}

// a -> b, b -> ba on the rose with two petals. Expansion factor is the
// golden ratio; carries the shortest possible periodic Nielsen path.
inline GraphMap fibonacci_map() {
  Graph g = rose_graph(2);
  return GraphMap::build(g, {parse_path(g, "b"), parse_path(g, "ba")}, "fib");
}

}  // namespace ttcert
