#include "ttcert/tt.hpp"

#include <set>

#include "catch2/catch_amalgamated.hpp"
#include "ttcert/builtin.hpp"

using namespace ttcert;

namespace {

HalfEdge dir(const Graph& g, const std::string& name) {
  auto d = g.direction_by_name(name);
  REQUIRE(d.has_value());
  return *d;
}

std::set<std::set<std::string>> gate_partition(const GraphMap& g) {
  GateStructure gates = compute_gates(g);
  std::map<int, std::set<std::string>> by_id;
  for (HalfEdge d = 0; d < g.graph().direction_count(); ++d)
    by_id[gates.gate[d]].insert(g.graph().direction_name(d));
  std::set<std::set<std::string>> out;
  for (auto& [id, members] : by_id) out.insert(members);
  return out;
}

std::set<std::set<std::string>> turn_set(const GraphMap& g,
                                         const std::set<Turn>& turns) {
  std::set<std::set<std::string>> out;
  for (const Turn& t : turns)
    out.insert({g.graph().direction_name(t.a), g.graph().direction_name(t.b)});
  return out;
}

std::vector<Turn> illegal_turns(const GraphMap& g) {
  GateStructure gates = compute_gates(g);
  std::vector<Turn> out;
  const Graph& gr = g.graph();
  for (HalfEdge a = 0; a < gr.direction_count(); ++a)
    for (HalfEdge b = a + 1; b < gr.direction_count(); ++b)
      if (gr.origin(a) == gr.origin(b) && !gates.legal(Turn(a, b)))
        out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST_CASE("gates of the plastic map") {
  REQUIRE(gate_partition(plastic_map()) ==
          std::set<std::set<std::string>>{
              {"a"}, {"b"}, {"c"}, {"B"}, {"A", "C"}});

  auto illegal = illegal_turns(plastic_map());
  REQUIRE(illegal.size() == 1);
  Graph g = plastic_map().graph();
  REQUIRE(illegal[0] == Turn(dir(g, "A"), dir(g, "C")));
}

TEST_CASE("gates of the fibonacci map") {
  REQUIRE(gate_partition(fibonacci_map()) ==
          std::set<std::set<std::string>>{{"a", "b"}, {"A"}, {"B"}});
  auto illegal = illegal_turns(fibonacci_map());
  REQUIRE(illegal.size() == 1);
  Graph g = fibonacci_map().graph();
  REQUIRE(illegal[0] == Turn(dir(g, "a"), dir(g, "b")));
}

TEST_CASE("gates are invariant under powers") {
  for (const GraphMap& g : {plastic_map(), fibonacci_map()}) {
    GateStructure base = compute_gates(g);
    for (int k = 2; k <= 6; ++k) {
      GateStructure pow_gates = compute_gates(power(g, k));
      for (HalfEdge x = 0; x < g.graph().direction_count(); ++x)
        for (HalfEdge y = 0; y < g.graph().direction_count(); ++y)
          REQUIRE(base.same_gate(x, y) == pow_gates.same_gate(x, y));
    }
  }
}

TEST_CASE("direction periods") {
  GraphMap g = plastic_map();
  GateStructure gates = compute_gates(g);
  const Graph& gr = g.graph();
  REQUIRE(gates.period[dir(gr, "a")] == 3);
  REQUIRE(gates.period[dir(gr, "b")] == 3);
  REQUIRE(gates.period[dir(gr, "c")] == 3);
  REQUIRE(gates.period[dir(gr, "B")] == 2);
  REQUIRE(gates.period[dir(gr, "C")] == 2);
  REQUIRE(gates.period[dir(gr, "A")] == 0);  // preperiodic only
  REQUIRE_FALSE(gates.is_periodic(dir(gr, "A")));
  REQUIRE(compute_gates(power(g, 6)).is_fixed(dir(gr, "a")));
}

TEST_CASE("taken turns close under the derivative") {
  GraphMap g = plastic_map();
  TakenTurns taken = taken_turns(g);
  REQUIRE_FALSE(taken.collapses());
  REQUIRE(turn_set(g, taken.turns) ==
          std::set<std::set<std::string>>{{"A", "b"},
                                          {"B", "c"},
                                          {"C", "a"},
                                          {"B", "b"},
                                          {"C", "c"},
                                          {"B", "a"},
                                          {"C", "b"}});

  GraphMap f = fibonacci_map();
  REQUIRE(turn_set(f, taken_turns(f).turns) ==
          std::set<std::set<std::string>>{{"B", "a"}, {"A", "b"}, {"B", "b"}});
}

TEST_CASE("taken turns are invariant under powers") {
  for (const GraphMap& g : {plastic_map(), fibonacci_map()}) {
    auto base = turn_set(g, taken_turns(g).turns);
    for (int k = 2; k <= 6; ++k)
      REQUIRE(turn_set(g, taken_turns(power(g, k)).turns) == base);
  }
}

TEST_CASE("train track certification") {
  REQUIRE(is_train_track(plastic_map()).ok);
  REQUIRE(is_train_track(fibonacci_map()).ok);

  // a -> ab, b -> Ab folds in the third iterate: the taken turn {A,b}
  // reaches {B,B} after two derivative steps.
  Graph r = rose_graph(2);
  GraphMap bad = GraphMap::build(
      r, {parse_path(r, "ab"), parse_path(r, "Ab")}, "fold");
  TrainTrackReport report = is_train_track(bad);
  REQUIRE_FALSE(report.ok);
  REQUIRE(report.witness.has_value());
  // {A,b} sits in g(a); two derivative steps later the orbit collapses.
  REQUIRE(report.witness_steps == 2);
  REQUIRE(*report.witness == Turn(dir(r, "B"), dir(r, "A")));
  REQUIRE(report.detail.find("degenerate") != std::string::npos);

  // And indeed the third power of the naive word image cancels.
  Path raw = bad.image(parse_path(r, "a")[0]);
  Path twice = bad.apply(raw);
  Path naive;
  for (HalfEdge e : twice) {
    const Path& img = bad.image(e);
    naive.insert(naive.end(), img.begin(), img.end());
  }
  REQUIRE_FALSE(is_tight(naive));
}

TEST_CASE("local and stable Whitehead graphs of the plastic map") {
  GraphMap g = plastic_map();
  GateStructure gates = compute_gates(g);
  TakenTurns taken = taken_turns(g);

  WhiteheadGraph local = local_whitehead(g, 0, taken);
  REQUIRE(local.nodes.size() == 6);
  REQUIRE(local.edges.size() == 7);
  REQUIRE(local.connected());

  WhiteheadGraph stable = stable_whitehead(g, 0, taken, gates);
  REQUIRE(stable.nodes.size() == 5);
  REQUIRE(stable.edges.size() == 6);
  REQUIRE(stable.connected());
  // Complete bipartite on {B, C} x {a, b, c}.
  const Graph& gr = g.graph();
  for (const std::string& up : {"B", "C"})
    for (const std::string& low : {"a", "b", "c"}) {
      Turn t(dir(gr, up), dir(gr, low));
      REQUIRE(std::count(stable.edges.begin(), stable.edges.end(),
                         std::make_pair(t.a, t.b)) == 1);
    }
}

TEST_CASE("stable Whitehead graph of the fibonacci map") {
  GraphMap f = fibonacci_map();
  GateStructure gates = compute_gates(f);
  TakenTurns taken = taken_turns(f);
  WhiteheadGraph stable = stable_whitehead(f, 0, taken, gates);
  const Graph& gr = f.graph();
  REQUIRE(stable.nodes.size() == 3);
  REQUIRE(stable.has_node(dir(gr, "b")));
  REQUIRE(stable.has_node(dir(gr, "A")));
  REQUIRE(stable.has_node(dir(gr, "B")));
  REQUIRE(stable.edges.size() == 2);
  REQUIRE(stable.connected());
}

TEST_CASE("whitehead graph connectivity detects isolation") {
  WhiteheadGraph wg;
  wg.nodes = {0, 2, 4};
  wg.edges = {{0, 2}};
  REQUIRE_FALSE(wg.connected());
  wg.edges.push_back({2, 4});
  REQUIRE(wg.connected());
  WhiteheadGraph empty;
  REQUIRE(empty.connected());
}

TEST_CASE("principal vertices") {
  GraphMap g = plastic_map();
  GateStructure gates = compute_gates(g);
  REQUIRE(principal_vertices(g, gates, Verdict::no) ==
          std::vector<Vertex>{0});
  REQUIRE_THROWS_AS(principal_vertices(g, gates, Verdict::yes), TTError);
  REQUIRE_THROWS_AS(principal_vertices(g, gates, Verdict::inconclusive),
                    TTError);

  // The fibonacci vertex carries three periodic directions.
  GraphMap f = fibonacci_map();
  REQUIRE(principal_vertices(f, compute_gates(f), Verdict::no) ==
          std::vector<Vertex>{0});
}

TEST_CASE("eigenray prefixes extend coherently") {
  GraphMap g6 = power(plastic_map(), 6);
  const Graph& gr = g6.graph();
  REQUIRE(g6.derivative(dir(gr, "a")) == dir(gr, "a"));
  REQUIRE(eigenray_prefix(g6, dir(gr, "a"), 1) == parse_path(gr, "abbc"));
  REQUIRE(eigenray_prefix(g6, dir(gr, "B"), 1) == parse_path(gr, "BACCB"));

  Path prev = eigenray_prefix(g6, dir(gr, "a"), 0);
  for (int depth = 1; depth <= 3; ++depth) {
    Path cur = eigenray_prefix(g6, dir(gr, "a"), depth);
    REQUIRE(cur.size() > prev.size());
    REQUIRE(std::equal(prev.begin(), prev.end(), cur.begin()));
    prev = cur;
  }

  GraphMap g = plastic_map();
  REQUIRE_THROWS_AS(eigenray_prefix(g, dir(g.graph(), "a"), 1), TTError);
}

TEST_CASE("leaf segments iterate the orbit period") {
  GraphMap g = plastic_map();
  const Graph& gr = g.graph();
  REQUIRE(leaf_segment(g, dir(gr, "a"), 1) == parse_path(gr, "ab"));
  REQUIRE(leaf_segment(g, dir(gr, "a"), 2) == parse_path(gr, "abbc"));
  REQUIRE(leaf_segment(g, dir(gr, "a"), 0) == Path{dir(gr, "a")});
  REQUIRE_THROWS_AS(leaf_segment(g, dir(gr, "A"), 1), TTError);
}

TEST_CASE("tripods at a vertex with three fixed directions") {
  GraphMap g6 = power(plastic_map(), 6);
  const Graph& gr = g6.graph();

  // Fixed directions in id order are a, b, B.
  auto rays = tripod_at(g6, 0, 1);
  REQUIRE(rays[0] == parse_path(gr, "abbc"));
  REQUIRE(rays[1] == parse_path(gr, "bccab"));
  REQUIRE(rays[2] == parse_path(gr, "BACCB"));
  std::set<HalfEdge> first = {rays[0][0], rays[1][0], rays[2][0]};
  REQUIRE(first.size() == 3);

  auto custom = tripod_at(g6, 0, 1,
                          std::array<HalfEdge, 3>{dir(gr, "a"), dir(gr, "B"),
                                                  dir(gr, "C")});
  REQUIRE(custom[1] == parse_path(gr, "BACCB"));

  REQUIRE_THROWS_AS(tripod_at(plastic_map(), 0, 1), TTError);
  REQUIRE_THROWS_AS(
      tripod_at(g6, 0, 1,
                std::array<HalfEdge, 3>{dir(gr, "a"), dir(gr, "a"),
                                        dir(gr, "b")}),
      TTError);
  REQUIRE_THROWS_AS(
      tripod_at(g6, 0, 1,
                std::array<HalfEdge, 3>{dir(gr, "a"), dir(gr, "b"),
                                        dir(gr, "A")}),
      TTError);
}
