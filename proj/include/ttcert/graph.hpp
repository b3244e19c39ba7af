#pragma once

// Finite connected graphs in the half-edge representation.
//
// Unoriented edge k owns two half-edges 2k (forward) and 2k+1 (reverse), so
// reverse() is the xor involution and can never fix a half-edge. A direction
// at a vertex v is a half-edge with origin v. Paths are sequences of
// half-edges with matching endpoints; a path is tight when it never steps
// across an edge and immediately back.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttcert {

using Vertex = int;
using HalfEdge = int;
using Path = std::vector<HalfEdge>;

inline HalfEdge reverse(HalfEdge e) { return e ^ 1; }
inline int edge_of(HalfEdge e) { return e >> 1; }
inline bool forward(HalfEdge e) { return (e & 1) == 0; }
inline HalfEdge forward_half(int edge) { return 2 * edge; }

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

class Graph {
 public:
  Vertex add_vertex(std::string name) {
    vertex_names_.push_back(std::move(name));
    return static_cast<Vertex>(vertex_names_.size()) - 1;
  }

  // Adds the unoriented edge {2k, 2k+1} with origin(2k) = v, origin(2k+1) = w
  // and returns its forward half-edge.
  HalfEdge add_edge(std::string name, Vertex v, Vertex w) {
    if (v < 0 || v >= vertex_count() || w < 0 || w >= vertex_count())
      throw GraphError("edge '" + name + "' attached to undeclared vertex");
    edge_names_.push_back(std::move(name));
    origin_.push_back(v);
    origin_.push_back(w);
    return static_cast<HalfEdge>(origin_.size()) - 2;
  }

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edge_names_.size()); }
  int direction_count() const { return static_cast<int>(origin_.size()); }

  Vertex origin(HalfEdge e) const { return origin_[e]; }
  Vertex terminus(HalfEdge e) const { return origin_[reverse(e)]; }

  const std::string& vertex_name(Vertex v) const { return vertex_names_[v]; }
  const std::string& edge_name(int edge) const { return edge_names_[edge]; }

  // Single-letter edge names follow the word convention: "a" forward, "A"
  // reverse. Longer names spell the reverse as "~name".
  std::string direction_name(HalfEdge e) const {
    const std::string& base = edge_names_[edge_of(e)];
    if (forward(e)) return base;
    if (base.size() == 1 && std::islower(static_cast<unsigned char>(base[0])))
      return std::string(1, static_cast<char>(std::toupper(
                                static_cast<unsigned char>(base[0]))));
    return "~" + base;
  }

  std::optional<HalfEdge> direction_by_name(const std::string& name) const {
    if (name.empty()) return std::nullopt;
    if (name[0] == '~') {
      auto fwd = direction_by_name(name.substr(1));
      if (!fwd || !forward(*fwd)) return std::nullopt;
      return reverse(*fwd);
    }
    for (int k = 0; k < edge_count(); ++k) {
      if (edge_names_[k] == name) return forward_half(k);
      if (name.size() == 1 && edge_names_[k].size() == 1 &&
          std::isupper(static_cast<unsigned char>(name[0])) &&
          static_cast<char>(std::tolower(static_cast<unsigned char>(name[0]))) ==
              edge_names_[k][0])
        return reverse(forward_half(k));
    }
    return std::nullopt;
  }

  std::optional<Vertex> vertex_by_name(const std::string& name) const {
    for (Vertex v = 0; v < vertex_count(); ++v)
      if (vertex_names_[v] == name) return v;
    return std::nullopt;
  }

  std::vector<HalfEdge> directions_at(Vertex v) const {
    std::vector<HalfEdge> out;
    for (HalfEdge e = 0; e < direction_count(); ++e)
      if (origin_[e] == v) out.push_back(e);
    return out;
  }

  int valence(Vertex v) const {
    return static_cast<int>(directions_at(v).size());
  }

  bool operator==(const Graph& o) const = default;

  // First Betti number v - e + 1 of a connected graph.
  int rank() const { return edge_count() - vertex_count() + 1; }

  bool is_connected() const {
    if (vertex_count() == 0) return false;
    std::vector<char> seen(vertex_count(), 0);
    std::vector<Vertex> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (HalfEdge e = 0; e < direction_count(); ++e)
        if (origin_[e] == v && !seen[terminus(e)]) {
          seen[terminus(e)] = 1;
          stack.push_back(terminus(e));
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<Vertex> origin_;  // indexed by half-edge
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Structural validation. Low valence is only a warning: maps on such graphs
// are legitimate, they just cannot be train track maps in the expanding
// irreducible sense.
inline ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  if (g.vertex_count() == 0) report.errors.push_back("graph has no vertices");
  if (g.edge_count() == 0) report.errors.push_back("graph has no edges");
  if (!report.errors.empty()) return report;
  if (!g.is_connected()) report.errors.push_back("graph is not connected");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int val = g.valence(v);
    if (val <= 2)
      report.warnings.push_back("vertex '" + g.vertex_name(v) +
                                "' has valence " + std::to_string(val));
  }
  return report;
}

inline bool is_path(const Graph& g, const Path& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= g.direction_count()) return false;
    if (i + 1 < p.size() && g.terminus(p[i]) != g.origin(p[i + 1]))
      return false;
  }
  return true;
}

inline bool is_tight(const Path& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i + 1] == reverse(p[i])) return false;
  return true;
}

// Removes backtracking subwords e e^-1 until none remain. Stack pass, so one
// sweep suffices and the result is independent of cancellation order.
inline Path tighten(const Path& p) {
  Path out;
  out.reserve(p.size());
  for (HalfEdge e : p) {
    if (!out.empty() && out.back() == reverse(e))
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

inline Path path_reverse(const Path& p) {
  Path out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(reverse(*it));
  return out;
}

inline Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// A turn is an unordered pair of directions at a common vertex, normalized
// so a <= b. The degenerate turn {d, d} arises as the image of a turn whose
// directions collide; it is never legal.
struct Turn {
  HalfEdge a;
  HalfEdge b;

  Turn(HalfEdge x, HalfEdge y) : a(std::min(x, y)), b(std::max(x, y)) {}
  bool degenerate() const { return a == b; }
  bool operator==(const Turn& o) const = default;
  auto operator<=>(const Turn& o) const = default;
};

// Turns crossed by a tight path: {reverse(p[i]), p[i+1]} at each interior
// vertex visit.
inline std::vector<Turn> turns_of(const Graph& g, const Path& p) {
  if (!is_path(g, p)) throw GraphError("turns_of: not a path");
  if (!is_tight(p)) throw GraphError("turns_of: path is not tight");
  std::vector<Turn> out;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    out.emplace_back(reverse(p[i]), p[i + 1]);
  return out;
}

// Inverse of path_to_string. A whitespace token naming a direction is taken
// whole; any other token is read letter by letter.
inline Path parse_path(const Graph& g, const std::string& word) {
  Path out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (auto d = g.direction_by_name(token)) {
      out.push_back(*d);
    } else {
      for (char c : token) {
        auto e = g.direction_by_name(std::string(1, c));
        if (!e) throw GraphError("unknown direction '" + std::string(1, c) +
                                 "' in '" + token + "'");
        out.push_back(*e);
      }
    }
    token.clear();
  };
  for (char c : word) {
    if (std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token += c;
  }
  flush();
  return out;
}

// Single-letter directions concatenate as a word; multi-letter names are
// space-separated to keep the result parseable.
inline std::string path_to_string(const Graph& g, const Path& p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    const std::string name = g.direction_name(p[i]);
    if (i > 0 && (name.size() > 1 || g.direction_name(p[i - 1]).size() > 1))
      out += ' ';
    out += name;
  }
  return out;
}

}  // namespace ttcert
