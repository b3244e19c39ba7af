#pragma once

// Train track structure: gates, legal turns, taken turns, Whitehead graphs,
// and the eigenrays spanned by fixed directions.
//
// Two directions share a gate when their derivative orbits eventually
// coincide. Once both orbits reach the periodic core the derivative acts
// injectively there, so orbits that ever merge have merged after m steps,
// m the number of directions. Gates are therefore the fibers of D^m, and
// they are invariant under replacing the map by a power.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttcert/graph_map.hpp"
#include "ttcert/verdict.hpp"

namespace ttcert {

struct TTError : std::runtime_error {
  explicit TTError(const std::string& what) : std::runtime_error(what) {}
};

struct GateStructure {
  std::vector<HalfEdge> dmap;    // derivative on directions
  std::vector<int> gate;         // direction -> gate id
  std::vector<int> period;       // orbit period, 0 when not periodic
  std::vector<int> gate_count_at;  // per vertex

  bool same_gate(HalfEdge a, HalfEdge b) const { return gate[a] == gate[b]; }
  bool legal(const Turn& t) const {
    return !t.degenerate() && gate[t.a] != gate[t.b];
  }
  bool is_periodic(HalfEdge d) const { return period[d] > 0; }
  bool is_fixed(HalfEdge d) const { return dmap[d] == d; }
};

inline GateStructure compute_gates(const GraphMap& g) {
  const int m = g.graph().direction_count();
  GateStructure out;
  out.dmap = g.derivative_map();

  // Fibers of the m-fold derivative.
  std::vector<HalfEdge> stable(m);
  for (HalfEdge d = 0; d < m; ++d) {
    HalfEdge x = d;
    for (int i = 0; i < m; ++i) x = out.dmap[x];
    stable[d] = x;
  }
  out.gate.assign(m, -1);
  std::map<std::pair<Vertex, HalfEdge>, int> ids;  // gates live at vertices
  for (HalfEdge d = 0; d < m; ++d) {
    auto key = std::make_pair(g.graph().origin(d), stable[d]);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    out.gate[d] = it->second;
  }

  out.period.assign(m, 0);
  for (HalfEdge d = 0; d < m; ++d) {
    HalfEdge x = out.dmap[d];
    for (int t = 1; t <= m; ++t) {
      if (x == d) {
        out.period[d] = t;
        break;
      }
      x = out.dmap[x];
    }
  }

  out.gate_count_at.assign(g.graph().vertex_count(), 0);
  std::set<int> seen;
  for (HalfEdge d = 0; d < m; ++d)
    if (seen.insert(out.gate[d]).second)
      ++out.gate_count_at[g.graph().origin(d)];
  return out;
}

// All turns crossed by edge images, closed under the derivative action.
// A degenerate arrival means some iterate of the map fails to be locally
// injective on an edge, which is exactly the train track obstruction.
struct TakenTurns {
  std::set<Turn> turns;  // nondegenerate turns taken by iterated images
  std::optional<Turn> degenerate_source;  // taken turn whose orbit collapses
  int steps_to_collapse = 0;

  bool collapses() const { return degenerate_source.has_value(); }
};

inline TakenTurns taken_turns(const GraphMap& g) {
  TakenTurns out;
  const auto dmap = g.derivative_map();
  std::vector<Turn> frontier;
  auto push = [&](const Turn& t, const Turn& source, int steps) {
    if (t.degenerate()) {
      if (!out.degenerate_source) {
        out.degenerate_source = source;
        out.steps_to_collapse = steps;
      }
      return;
    }
    if (out.turns.insert(t).second) frontier.push_back(t);
  };
  for (int k = 0; k < g.graph().edge_count(); ++k)
    for (const Turn& t : turns_of(g.graph(), g.image(forward_half(k))))
      push(t, t, 0);

  // Track how many derivative steps separate each turn from a seed so a
  // collapse can be reported with its distance.
  std::map<Turn, int> depth;
  for (const Turn& t : out.turns) depth[t] = 0;
  size_t cursor = 0;
  while (cursor < frontier.size()) {
    Turn t = frontier[cursor++];
    Turn image(dmap[t.a], dmap[t.b]);
    int d = depth[t] + 1;
    size_t before = out.turns.size();
    push(image, t, d);
    if (out.turns.size() > before) depth[image] = d;
    if (out.degenerate_source) break;
  }
  return out;
}

struct TrainTrackReport {
  bool ok = false;
  std::string detail;
  std::optional<Turn> witness;  // taken turn that eventually degenerates
  int witness_steps = 0;
};

// A map is a train track map when no iterate folds inside an edge image:
// equivalently, the derivative orbit of every taken turn stays
// nondegenerate. Edge images are tight by construction.
inline TrainTrackReport is_train_track(const GraphMap& g) {
  TrainTrackReport report;
  TakenTurns taken = taken_turns(g);
  if (taken.collapses()) {
    report.ok = false;
    report.witness = taken.degenerate_source;
    report.witness_steps = taken.steps_to_collapse;
    const Graph& gr = g.graph();
    report.detail = "taken turn {" +
                    gr.direction_name(taken.degenerate_source->a) + "," +
                    gr.direction_name(taken.degenerate_source->b) +
                    "} maps to a degenerate turn, " +
                    std::to_string(taken.steps_to_collapse) +
                    " derivative steps from an edge image";
    return report;
  }
  report.ok = true;
  report.detail = "all taken turns have nondegenerate derivative orbits";
  return report;
}

struct WhiteheadGraph {
  std::vector<HalfEdge> nodes;
  std::vector<std::pair<HalfEdge, HalfEdge>> edges;  // normalized a < b

  bool has_node(HalfEdge d) const {
    return std::find(nodes.begin(), nodes.end(), d) != nodes.end();
  }

  bool connected() const {
    if (nodes.empty()) return true;
    std::map<HalfEdge, int> comp;
    for (size_t i = 0; i < nodes.size(); ++i) comp[nodes[i]] = static_cast<int>(i);
    std::vector<int> parent(nodes.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : edges) parent[find(comp[a])] = find(comp[b]);
    int root = find(0);
    for (size_t i = 0; i < parent.size(); ++i)
      if (find(static_cast<int>(i)) != root) return false;
    return true;
  }
};

// Local Whitehead graph at v: directions at v joined when the turn is taken
// by some iterated edge image.
inline WhiteheadGraph local_whitehead(const GraphMap& g, Vertex v,
                                      const TakenTurns& taken) {
  WhiteheadGraph wg;
  wg.nodes = g.graph().directions_at(v);
  for (const Turn& t : taken.turns)
    if (g.graph().origin(t.a) == v) wg.edges.emplace_back(t.a, t.b);
  return wg;
}

// Stable Whitehead graph: the subgraph induced on periodic directions.
inline WhiteheadGraph stable_whitehead(const GraphMap& g, Vertex v,
                                       const TakenTurns& taken,
                                       const GateStructure& gates) {
  WhiteheadGraph wg;
  for (HalfEdge d : g.graph().directions_at(v))
    if (gates.is_periodic(d)) wg.nodes.push_back(d);
  for (const Turn& t : taken.turns)
    if (g.graph().origin(t.a) == v && gates.is_periodic(t.a) &&
        gates.is_periodic(t.b))
      wg.edges.emplace_back(t.a, t.b);
  return wg;
}

inline bool is_vertex_periodic(const GraphMap& g, Vertex v) {
  Vertex x = v;
  for (int t = 0; t < g.graph().vertex_count(); ++t) {
    x = g.vertex_image(x);
    if (x == v) return true;
  }
  return false;
}

// Principal vertices: periodic vertices carrying at least three periodic
// directions. Meaningful as stated only for maps certified free of periodic
// Nielsen paths; with such paths present the classification needs endpoint
// orbits this toolkit does not model, so the call refuses.
inline std::vector<Vertex> principal_vertices(const GraphMap& g,
                                              const GateStructure& gates,
                                              Verdict pnp_present) {
  if (pnp_present != Verdict::no)
    throw TTError(
        "principal vertices are only computed for maps certified free of "
        "periodic Nielsen paths");
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.graph().vertex_count(); ++v) {
    if (!is_vertex_periodic(g, v)) continue;
    int periodic_dirs = 0;
    for (HalfEdge d : g.graph().directions_at(v))
      if (gates.is_periodic(d)) ++periodic_dirs;
    if (periodic_dirs >= 3) out.push_back(v);
  }
  return out;
}

// g^depth applied to the edge of a fixed direction. Because the direction is
// fixed, each depth extends the previous one letter for letter.
inline Path eigenray_prefix(const GraphMap& g, HalfEdge d, int depth) {
  if (g.derivative(d) != d)
    throw TTError("eigenray_prefix: direction '" +
                  g.graph().direction_name(d) + "' is not fixed");
  if (depth < 0) throw TTError("eigenray_prefix: negative depth");
  Path ray = {d};
  for (int i = 0; i < depth; ++i) ray = g.apply(ray);
  return ray;
}

// Leaf segment spanned by a periodic direction: the orbit period is applied
// depth times, so successive depths are nested.
inline Path leaf_segment(const GraphMap& g, HalfEdge e, int depth) {
  GateStructure gates = compute_gates(g);
  if (!gates.is_periodic(e))
    throw TTError("leaf_segment: direction '" + g.graph().direction_name(e) +
                  "' is not periodic");
  Path seg = {e};
  for (int i = 0; i < depth * gates.period[e]; ++i) seg = g.apply(seg);
  return seg;
}

// Three eigenray prefixes at a vertex with at least three fixed directions.
// Distinct fixed directions lie in distinct gates automatically (their
// orbits are constant), and tight rays from a common point with distinct
// first edges meet only at that point in any cover, so the three prefixes
// span a tripod.
inline std::array<Path, 3> tripod_at(const GraphMap& g, Vertex v, int depth,
                                     std::optional<std::array<HalfEdge, 3>>
                                         seeds = std::nullopt) {
  std::array<HalfEdge, 3> use;
  if (seeds) {
    use = *seeds;
    for (HalfEdge d : use) {
      if (g.graph().origin(d) != v)
        throw TTError("tripod_at: seed direction is not based at the vertex");
      if (g.derivative(d) != d)
        throw TTError("tripod_at: seed direction is not fixed");
    }
    if (use[0] == use[1] || use[1] == use[2] || use[0] == use[2])
      throw TTError("tripod_at: seed directions must be distinct");
  } else {
    std::vector<HalfEdge> fixed;
    for (HalfEdge d : g.graph().directions_at(v))
      if (g.derivative(d) == d) fixed.push_back(d);
    if (fixed.size() < 3)
      throw TTError("tripod_at: vertex '" + g.graph().vertex_name(v) +
                    "' has fewer than three fixed directions");
    use = {fixed[0], fixed[1], fixed[2]};
  }
  std::array<Path, 3> rays = {eigenray_prefix(g, use[0], depth),
                              eigenray_prefix(g, use[1], depth),
                              eigenray_prefix(g, use[2], depth)};
  for (const Path& r : rays)
    if (!is_tight(r)) throw TTError("tripod_at: ray is not tight");
  return rays;
}

}  // namespace ttcert
