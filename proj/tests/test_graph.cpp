#include "doctest.h"

#include <random>

#include "pclingam/errors.hpp"
#include "pclingam/graph.hpp"
#include "test_util.hpp"

using namespace pclingam;

namespace {
const std::vector<Node> kNone;
}

TEST_CASE("Dag rejects cycles, self-loops and duplicates") {
  CHECK_THROWS_AS(Dag(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Dag(2, std::vector<Edge>{{1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Dag(2, std::vector<Edge>{{0, 1}, {0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Dag(2, std::vector<Edge>{{0, 1}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Dag(2, std::vector<Edge>{{0, 2}}), InvalidArgument);

  Dag g(4, std::vector<Edge>{{2, 0}, {0, 1}, {2, 3}});
  CHECK(g.topological_order() == std::vector<Node>{2, 0, 1, 3});
  CHECK(g.parents(1) == std::vector<Node>{0});
  CHECK(g.children(2) == std::vector<Node>{0, 3});
  CHECK(g.edge_count() == 3);
}

TEST_CASE("MixedGraph keeps one mark per adjacency") {
  MixedGraph g(3);
  g.add_directed(0, 1);
  CHECK_THROWS_AS(g.add_undirected(1, 0), InvalidArgument);
  CHECK_THROWS_AS(g.add_directed(2, 2), InvalidArgument);
  g.add_undirected(2, 1);
  CHECK(g.has_undirected(1, 2));
  CHECK(g.undirected_edges() == std::vector<Edge>{{1, 2}});
  g.orient(2, 1);
  CHECK(g.has_directed(2, 1));
  CHECK_FALSE(g.has_directed(1, 2));
  CHECK(g.parents(1) == std::vector<Node>{0, 2});
  g.unorient(0, 1);
  CHECK(edge_mark(g, 0, 1) == EdgeMark::Undirected);
  CHECK(edge_mark(g, 1, 2) == EdgeMark::Backward);
  CHECK(edge_mark(g, 0, 2) == EdgeMark::Absent);
}

TEST_CASE("d_separated on the three canonical triples") {
  const Dag chain(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const Dag collider(3, std::vector<Edge>{{0, 1}, {2, 1}});
  const std::vector<Node> mid{1};

  CHECK(d_separated(chain, 0, 2, mid));
  CHECK_FALSE(d_separated(chain, 0, 2, kNone));
  CHECK_FALSE(d_separated(collider, 0, 2, mid));
  CHECK(d_separated(collider, 0, 2, kNone));
}

TEST_CASE("d_separated: conditioning on a collider's descendant opens the path") {
  const Dag g(4, std::vector<Edge>{{0, 1}, {2, 1}, {1, 3}});
  const std::vector<Node> desc{3};
  CHECK_FALSE(d_separated(g, 0, 2, desc));
}

TEST_CASE("d_separated argument checks") {
  const Dag g(3, std::vector<Edge>{{0, 1}});
  CHECK_THROWS_AS(d_separated(g, 0, 3, kNone), InvalidArgument);
  CHECK_THROWS_AS(d_separated(g, 0, 0, kNone), InvalidArgument);
  const std::vector<Node> bad{0};
  CHECK_THROWS_AS(d_separated(g, 0, 1, bad), InvalidArgument);
}

TEST_CASE("d_separated agrees with the moral ancestral graph criterion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Dag g = testing::random_dag(n, 0.4, rng);
    for (Node x = 0; x < n; ++x) {
      for (Node y = x + 1; y < n; ++y) {
        std::vector<Node> cond;
        for (Node z = 0; z < n; ++z)
          if (z != x && z != y && rng() % 3 == 0) cond.push_back(z);
        CHECK(d_separated(g, x, y, cond) == testing::moral_d_separated(g, x, y, cond));
      }
    }
  }
}

TEST_CASE("unshielded colliders are listed once with a < c") {
  const Dag g(4, std::vector<Edge>{{0, 2}, {1, 2}, {3, 2}, {0, 3}});
  const auto colliders = unshielded_colliders(g);
  REQUIRE(colliders.size() == 2);
  CHECK(colliders[0] == std::array<Node, 3>{0, 2, 1});
  CHECK(colliders[1] == std::array<Node, 3>{1, 2, 3});
}
