#include "ttcert/graph_map.hpp"

#include <random>
#include <optional>

#include "catch2/catch_amalgamated.hpp"
#include "ttcert/builtin.hpp"

using namespace ttcert;

namespace {

Path w(const Graph& g, const std::string& s) { return parse_path(g, s); }

// Random self-map of a rose: every edge goes to a random nonempty tight word.
GraphMap random_rose_map(std::mt19937& rng, int petals) {
  Graph g = rose_graph(petals);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> dir(0, g.direction_count() - 1);
  std::vector<Path> images;
  for (int k = 0; k < petals; ++k) {
    Path img;
    do {
      img.clear();
      int l = len(rng);
      for (int i = 0; i < l; ++i) img.push_back(dir(rng));
      img = tighten(img);
    } while (img.empty());
    images.push_back(img);
  }
  return GraphMap::build(g, images);
}

}  // namespace

TEST_CASE("integer matrix arithmetic") {
  IntMatrix m(2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  REQUIRE(m.pow(0) == IntMatrix::identity(2));
  REQUIRE(m.pow(1) == m);
  // Fibonacci growth under squaring.
  IntMatrix m8 = m.pow(8);
  REQUIRE(m8.at(0, 0) == 34);
  REQUIRE(m8.at(0, 1) == 21);
  REQUIRE(m8.at(1, 1) == 13);
  REQUIRE(m8.column_sum(0) == 55);
  REQUIRE((m * m) == m.pow(2));
  REQUIRE(m.trace() == 1);
  REQUIRE_THROWS_AS(m.pow(-1), std::invalid_argument);
  REQUIRE_THROWS_AS(IntMatrix(0), std::invalid_argument);
}

TEST_CASE("plastic map structure") {
  GraphMap g = plastic_map();
  REQUIRE(g.graph().edge_count() == 3);
  REQUIRE(g.image(w(g.graph(), "a")[0]) == w(g.graph(), "b"));
  REQUIRE(g.image(w(g.graph(), "c")[0]) == w(g.graph(), "ab"));
  // Reverse images are reversed words.
  REQUIRE(g.image(w(g.graph(), "C")[0]) == w(g.graph(), "BA"));
  REQUIRE(g.vertex_image(0) == 0);
}

TEST_CASE("derivative orbits") {
  GraphMap g = plastic_map();
  const Graph& r = g.graph();
  auto d = [&](const std::string& s) {
    return r.direction_name(g.derivative(w(r, s)[0]));
  };
  REQUIRE(d("a") == "b");
  REQUIRE(d("b") == "c");
  REQUIRE(d("c") == "a");
  REQUIRE(d("A") == "B");
  REQUIRE(d("B") == "C");
  REQUIRE(d("C") == "B");
}

TEST_CASE("apply tightens cancellation") {
  GraphMap g = plastic_map();
  const Graph& r = g.graph();
  REQUIRE(g.apply(w(r, "cA")) == w(r, "a"));  // ab . B
  REQUIRE(g.apply(w(r, "abc")) == w(r, "bcab"));
  REQUIRE(g.apply(Path{}).empty());
}

TEST_CASE("compose and power") {
  GraphMap g = plastic_map();
  const Graph& r = g.graph();

  GraphMap g3 = power(g, 3);
  REQUIRE(g3.image(w(r, "a")[0]) == w(r, "ab"));
  REQUIRE(g3.image(w(r, "b")[0]) == w(r, "bc"));
  REQUIRE(g3.image(w(r, "c")[0]) == w(r, "cab"));

  GraphMap g6 = power(g, 6);
  REQUIRE(g6.image(w(r, "a")[0]) == w(r, "abbc"));
  REQUIRE(g6.image(w(r, "b")[0]) == w(r, "bccab"));
  REQUIRE(g6.image(w(r, "c")[0]) == w(r, "cababbc"));
  REQUIRE(compose(g3, g3) == g6);

  GraphMap f = fibonacci_map();
  GraphMap f2 = power(f, 2);
  REQUIRE(f2.image(0) == w(f.graph(), "ba"));
  REQUIRE(f2.image(2) == w(f.graph(), "bab"));

  REQUIRE(power(g, 1) == g);
  REQUIRE_THROWS_AS(power(g, 0), MapError);
  REQUIRE_THROWS_AS(power(g, -2), MapError);
}

TEST_CASE("transition matrix uses the column convention") {
  GraphMap g = plastic_map();
  IntMatrix m = transition_matrix(g);
  // Column j = unoriented edge counts of the image of edge j.
  int expected[3][3] = {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(m.at(i, j) == expected[i][j]);

  // Image lengths are column sums.
  REQUIRE(m.column_sum(2) == 2);

  IntMatrix m13 = transition_matrix(power(g, 13));
  REQUIRE(m13 == m.pow(13));
  int expected13[3][3] = {{7, 9, 12}, {12, 16, 21}, {9, 12, 16}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(m13.at(i, j) == expected13[i][j]);
}

TEST_CASE("abelianization tracks signs") {
  Graph r1 = rose_graph(1);
  GraphMap inv = GraphMap::build(r1, {w(r1, "A")});
  IntMatrix m = abelianization_matrix(inv);
  REQUIRE(m.at(0, 0) == -1);

  // On positive words it agrees with the transition matrix.
  GraphMap g = plastic_map();
  REQUIRE(abelianization_matrix(g) == transition_matrix(g));
}

TEST_CASE("abelianization is multiplicative") {
  std::mt19937 rng(0xab5eed);
  int done = 0;
  while (done < 10000) {
    int petals = 2 + done % 2;
    GraphMap g = random_rose_map(rng, petals);
    GraphMap h = random_rose_map(rng, petals);
    std::optional<GraphMap> gh;
    try {
      gh = compose(g, h);
    } catch (const MapError&) {
      continue;  // composite collapses an edge, pair is not composable
    }
    REQUIRE(abelianization_matrix(*gh) ==
            abelianization_matrix(g) * abelianization_matrix(h));
    ++done;
  }
}

TEST_CASE("transition matrices of map powers multiply for expanding maps") {
  // Holds whenever iteration causes no cancellation; the certified fixtures
  // satisfy that by definition.
  for (const GraphMap& g : {plastic_map(), fibonacci_map()}) {
    IntMatrix m = transition_matrix(g);
    for (int k = 1; k <= 6; ++k)
      REQUIRE(transition_matrix(power(g, k)) == m.pow(k));
  }
}

TEST_CASE("degenerate maps are rejected") {
  Graph r = rose_graph(2);
  REQUIRE_THROWS_AS(GraphMap::build(r, {w(r, "aA"), w(r, "b")}), MapError);
  REQUIRE_THROWS_AS(GraphMap::build(r, {w(r, "a")}), MapError);

  Graph t;
  t.add_vertex("v");
  t.add_vertex("w");
  t.add_edge("a", 0, 1);
  t.add_edge("b", 0, 1);
  // b's image runs w -> v while a fixes endpoints: inconsistent at v.
  REQUIRE_THROWS_AS(GraphMap::build(t, {Path{0}, Path{1}}), MapError);
}

TEST_CASE("derivative map respects iteration") {
  GraphMap g = plastic_map();
  auto d1 = g.derivative_map();
  for (int k = 1; k <= 6; ++k) {
    auto dk = power(g, k).derivative_map();
    for (HalfEdge e = 0; e < g.graph().direction_count(); ++e) {
      HalfEdge it = e;
      for (int i = 0; i < k; ++i) it = d1[it];
      REQUIRE(dk[e] == it);
    }
  }
}
