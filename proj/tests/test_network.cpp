#include <doctest.h>

#include <random>

#include "bnet/network.hpp"
#include "helpers.hpp"

using namespace bnet;
using namespace bnet::testing;

TEST_CASE("network validation classifies the paper cases") {
  Network pair(2);
  pair.set_alpha(0, rat(1));
  pair.add_edge(0, 1, rat(1));
  CHECK(validate_network(pair) == Trivia::NonTrivial);

  Network bertrand(2);
  bertrand.add_edge(0, 1, rat(5));
  CHECK(validate_network(bertrand) == Trivia::NoCaptive);

  Network mono(1);
  mono.set_alpha(0, rat(1));
  CHECK(validate_network(mono) == Trivia::SingleSeller);

  Network disc(3);
  disc.set_alpha(0, rat(1));
  disc.add_edge(0, 1, rat(1));
  CHECK(validate_network(disc) == Trivia::Disconnected);
}

TEST_CASE("malformed networks rejected") {
  Network net(3);
  CHECK_THROWS_AS(net.set_alpha(0, rat(-1)), Error);
  CHECK_THROWS_AS(net.add_edge(0, 0, rat(1)), Error);
  CHECK_THROWS_AS(net.add_edge(0, 1, rat(0)), Error);
  net.add_edge(0, 1, rat(1));
  CHECK_THROWS_AS(net.add_edge(1, 0, rat(2)), Error);
}

TEST_CASE("graph metrics need a connected network") {
  Network disc(3);
  disc.set_alpha(0, rat(1));
  disc.add_edge(0, 1, rat(1));
  CHECK_THROWS_AS(graph_metrics(disc), Error);
}

TEST_CASE("effective degrees on the spec networks") {
  GraphMetrics m = graph_metrics(unit_line(3));
  CHECK(m.effective_degree[0] == rat(2));
  CHECK(m.effective_degree[1] == rat(2));
  CHECK(m.effective_degree[2] == rat(1));
  CHECK(m.diameter == 2);
  CHECK(m.alpha_max == rat(1));

  Network star(3);
  star.set_alpha(0, rat(10));
  star.add_edge(0, 1, rat(1));
  star.add_edge(0, 2, rat(1));
  CHECK(graph_metrics(star).effective_degree[0] == rat(12));

  Network edge(2);
  edge.add_edge(0, 1, rat(1));
  GraphMetrics em = graph_metrics(edge);
  CHECK(em.effective_degree[0] == rat(1));
  CHECK(em.effective_degree[1] == rat(1));
}

TEST_CASE("uniform no-captive networks have Delta_i = degree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Network net = random_connected_no_captive(8, 0.3, rng);
    // Rebuild with unit weights.
    Network unit(8);
    for (const auto& e : net.edges()) unit.add_edge(e.a, e.b, rat(1));
    GraphMetrics m = graph_metrics(unit);
    for (int i = 0; i < 8; ++i)
      CHECK(m.effective_degree[i] == Rational(static_cast<long>(unit.neighbors(i).size())));
  }
}

TEST_CASE("distances are symmetric and satisfy the triangle inequality") {
  std::mt19937_64 rng(5);
  Network net = random_connected_no_captive(9, 0.25, rng);
  GraphMetrics m = graph_metrics(net);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      CHECK(m.dist[i][j] == m.dist[j][i]);
      for (int k = 0; k < 9; ++k) CHECK(m.dist[i][j] <= m.dist[i][k] + m.dist[k][j]);
    }
}

TEST_CASE("edge cuts separating sellers from captive markets") {
  Network line3 = unit_line(3);
  CHECK(edge_cut_separates(line3, {{0, 1}}, 2));
  CHECK_FALSE(edge_cut_separates(line3, {{1, 2}}, 1));

  Network tri(3);
  tri.set_alpha(2, rat(1));
  tri.add_edge(0, 1, rat(1));
  tri.add_edge(1, 2, rat(1));
  tri.add_edge(0, 2, rat(1));
  CHECK_FALSE(edge_cut_separates(tri, {{0, 2}}, 0));

  CHECK_THROWS_AS(edge_cut_separates(line3, {{0, 2}}, 0), Error);
}
