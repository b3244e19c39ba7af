#pragma once

// Self-maps of graphs sending vertices to vertices and edges to tight
// nonempty edge paths. Edge images are stored for both orientations with
// image(reverse e) = reverse(image(e)) kept as an invariant, so reading off
// the image of any direction is O(1).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttcert/graph.hpp"
#include "ttcert/matrix.hpp"

namespace ttcert {

struct MapError : std::runtime_error {
  explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

class GraphMap {
 public:
  // forward_images[k] is the image word of forward_half(k). Words are
  // tightened on construction; a word that tightens away entirely would
  // collapse the edge and is rejected.
  static GraphMap build(Graph graph, std::vector<Path> forward_images,
                        std::string name = "f") {
    if (static_cast<int>(forward_images.size()) != graph.edge_count())
      throw MapError("map '" + name + "': expected one image per edge");
    GraphMap m;
    m.graph_ = std::move(graph);
    m.name_ = std::move(name);
    m.edge_image_.resize(m.graph_.direction_count());
    for (int k = 0; k < m.graph_.edge_count(); ++k) {
      Path img = tighten(forward_images[k]);
      if (img.empty())
        throw MapError("map '" + m.name_ + "': image of edge '" +
                       m.graph_.edge_name(k) + "' collapses");
      if (!is_path(m.graph_, img))
        throw MapError("map '" + m.name_ + "': image of edge '" +
                       m.graph_.edge_name(k) + "' is not a path");
      m.edge_image_[forward_half(k)] = img;
      m.edge_image_[reverse(forward_half(k))] = path_reverse(img);
    }
    m.derive_vertex_images();
    return m;
  }

  const Graph& graph() const { return graph_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const Path& image(HalfEdge e) const { return edge_image_[e]; }
  Vertex vertex_image(Vertex v) const { return vertex_image_[v]; }

  // First direction of the image: the derivative map on directions.
  HalfEdge derivative(HalfEdge e) const { return edge_image_[e].front(); }

  std::vector<HalfEdge> derivative_map() const {
    std::vector<HalfEdge> d(graph_.direction_count());
    for (HalfEdge e = 0; e < graph_.direction_count(); ++e)
      d[e] = derivative(e);
    return d;
  }

  // Image of a tight path, tightened. Images of consecutive edges can cancel
  // against each other, which is exactly what train track certification
  // rules out for legal paths.
  Path apply(const Path& p) const {
    Path out;
    for (HalfEdge e : p) {
      const Path& img = edge_image_[e];
      out.insert(out.end(), img.begin(), img.end());
    }
    return tighten(out);
  }

  bool operator==(const GraphMap& o) const {
    return graph_ == o.graph_ && vertex_image_ == o.vertex_image_ &&
           edge_image_ == o.edge_image_;
  }

 private:
  GraphMap() = default;

  // Vertex images are determined by edge images on a graph without isolated
  // vertices; inconsistent edge words are rejected here.
  void derive_vertex_images() {
    vertex_image_.assign(graph_.vertex_count(), -1);
    for (HalfEdge e = 0; e < graph_.direction_count(); ++e) {
      Vertex v = graph_.origin(e);
      Vertex img = graph_.origin(edge_image_[e].front());
      if (vertex_image_[v] == -1)
        vertex_image_[v] = img;
      else if (vertex_image_[v] != img)
        throw MapError("map '" + name_ +
                       "': edge images disagree at vertex '" +
                       graph_.vertex_name(v) + "'");
    }
    for (Vertex v = 0; v < graph_.vertex_count(); ++v)
      if (vertex_image_[v] == -1)
        throw MapError("map '" + name_ + "': vertex '" +
                       graph_.vertex_name(v) + "' has no incident edge");
  }

  Graph graph_;
  std::string name_;
  std::vector<Vertex> vertex_image_;
  std::vector<Path> edge_image_;  // indexed by half-edge
};

// g after h, both self-maps of the same graph.
inline GraphMap compose(const GraphMap& g, const GraphMap& h) {
  if (!(g.graph() == h.graph()))
    throw MapError("compose: maps live on different graphs");
  std::vector<Path> images;
  images.reserve(g.graph().edge_count());
  for (int k = 0; k < g.graph().edge_count(); ++k)
    images.push_back(g.apply(h.image(forward_half(k))));
  return GraphMap::build(g.graph(), std::move(images),
                         g.name() + "." + h.name());
}

inline GraphMap power(const GraphMap& g, int k) {
  if (k <= 0) throw MapError("power: exponent must be positive");
  GraphMap out = g;
  for (int i = 1; i < k; ++i) out = compose(g, out);
  out.set_name(g.name() + "^" + std::to_string(k));
  return out;
}

// Column convention: entry (i, j) counts unoriented crossings of edge i by
// the image of edge j, so column sums are image lengths and transition
// matrices compose on the left.
inline IntMatrix transition_matrix(const GraphMap& g) {
  const int n = g.graph().edge_count();
  IntMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (HalfEdge e : g.image(forward_half(j))) m.at(edge_of(e), j) += 1;
  return m;
}

// Signed edge counts: the action on first homology rel nothing, same column
// convention as transition_matrix.
inline IntMatrix abelianization_matrix(const GraphMap& g) {
  const int n = g.graph().edge_count();
  IntMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (HalfEdge e : g.image(forward_half(j)))
      m.at(edge_of(e), j) += forward(e) ? 1 : -1;
  return m;
}

}  // namespace ttcert
