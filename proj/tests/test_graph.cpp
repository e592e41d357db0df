#include <doctest.h>

#include <bit>
#include <set>

#include "antipode/error.hpp"
#include "antipode/graph.hpp"
#include "antipode/symmetry.hpp"
#include "helpers.hpp"

using namespace antipode;

namespace {

std::size_t regular_degree(const Graph& g) {
  const std::size_t d = g.degree(0);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != d) return 0;
  return d;
}

std::size_t girth(const Graph& g) {
  std::size_t best = ~std::size_t{0};
  for (auto [u, v] : g.edges()) {
    // shortest cycle through edge uv: 1 + distance from u to v avoiding the edge
    std::vector<std::pair<Vertex, Vertex>> rest;
    for (auto e : g.edges())
      if (e != std::pair{u, v}) rest.push_back(e);
    const auto h = Graph::from_edges(g.vertex_count(), rest);
    const auto dist = bfs_distances(h, u);
    if (dist[v] != kUnreachable) best = std::min<std::size_t>(best, dist[v] + 1);
  }
  return best;
}

}  // namespace

TEST_CASE("graph construction checks") {
  using E = std::pair<Vertex, Vertex>;
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<E>{{0, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<E>{{0, 3}}), Error);
  const auto g = Graph::from_edges(3, std::vector<E>{{0, 1}, {1, 0}, {2, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_THROWS_AS(Graph::from_csr({0, 1, 1}, {1}), Error);  // asymmetric
}

TEST_CASE("hypercube") {
  const auto q3 = hypercube(3);
  CHECK(q3.graph.vertex_count() == 8);
  CHECK(q3.graph.edge_count() == 12);
  CHECK(regular_degree(q3.graph) == 3);
  const auto q1 = hypercube(1);
  CHECK(q1.graph.vertex_count() == 2);
  CHECK(q1.graph.edge_count() == 1);
  const auto s10 = apsp_metric(hypercube(10).graph);
  CHECK(diameter(s10) == 10);
  CHECK(average_distance(s10) == 5);
  CHECK_THROWS_AS(hypercube(0), Error);
  CHECK_THROWS_AS(hypercube(31), Error);
  GraphLimits small;
  small.generator_vertex_cap = 1000;
  try {
    hypercube(10, small);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("hypercube distance is Hamming distance") {
  for (unsigned d = 1; d <= 10; ++d) {
    const auto q = hypercube(d);
    const auto s = apsp_metric(q.graph);
    bool ok = true;
    for (std::size_t x = 0; x < s.size() && ok; ++x)
      for (std::size_t y = 0; y < s.size() && ok; ++y)
        ok = s.scaled(x, y) == std::popcount(static_cast<unsigned>(x ^ y)) * s.denominator();
    CHECK_MESSAGE(ok, "d = " << d);
  }
}

TEST_CASE("cycle, complete, petersen") {
  const auto c12 = cycle(12);
  CHECK(c12.graph.edge_count() == 12);
  CHECK(regular_degree(c12.graph) == 2);
  CHECK(diameter(apsp_metric(c12.graph)) == 6);
  CHECK_THROWS_AS(cycle(2), Error);

  const auto k5 = apsp_metric(complete(5).graph);
  CHECK(diameter(k5) == 1);
  CHECK(average_distance(k5, AverageMode::OffDiagonal) == 1);
  CHECK_THROWS_AS(complete(1), Error);

  const auto p = petersen();
  CHECK(p.graph.vertex_count() == 10);
  CHECK(p.graph.edge_count() == 15);
  CHECK(regular_degree(p.graph) == 3);
  CHECK(girth(p.graph) == 5);
  const auto ps = apsp_metric(p.graph);
  CHECK(diameter(ps) == 2);
  CHECK(average_distance(ps) == R(3, 2));

  const auto c5 = apsp_metric(cycle(5).graph);
  CHECK(diameter(c5) == 2);
  CHECK(average_distance(c5) == R(6, 5));
  CHECK(detect_extremal_upper(apsp_metric(complete(4).graph)).extremal);
}

TEST_CASE("generated families carry verified certificates") {
  for (const auto& gen : {hypercube(4), cycle(9), complete(6), petersen()}) {
    REQUIRE(gen.certificate);
    const auto& auts = gen.certificate->automorphisms;
    CHECK(auts.transitive());
    for (const auto& p : auts.generators()) CHECK(gen.graph.preserves_adjacency(p));
    const auto v = is_vertex_transitive(gen.graph, auts);
    CHECK(v.status == TransitivityStatus::Certificate);
    REQUIRE(gen.known_automorphisms);
    for (const auto& p : gen.known_automorphisms->generators()) CHECK(gen.graph.preserves_adjacency(p));
  }
}

TEST_CASE("abelian Cayley graphs") {
  const auto z12 = cayley(AbelianGroup{{12}, {{1}, {11}}});
  const auto c12 = cycle(12);
  CHECK(z12.connected);
  const auto a = distance_distribution(apsp_metric(z12.graph));
  const auto b = distance_distribution(apsp_metric(c12.graph));
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].distance == b.entries[i].distance);
    CHECK(a.entries[i].mass == b.entries[i].mass);
  }

  const auto z2cubed = cayley(AbelianGroup{{2, 2, 2}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  const auto q3 = hypercube(3);
  CHECK(z2cubed.graph.edge_count() == 12);
  // mixed radix with the first coordinate most significant matches the bit labels up to reversal
  const auto sa = apsp_metric(z2cubed.graph);
  const auto sb = apsp_metric(q3.graph);
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) CHECK(sa.scaled(x, y) == sb.scaled(x, y));

  try {
    cayley(AbelianGroup{{6}, {{1}}});
    FAIL("asymmetric set accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetricConnectionSet);
  }
  try {
    cayley(AbelianGroup{{6}, {{0}, {1}, {5}}});
    FAIL("identity accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ContainsIdentity);
  }
  const auto split = cayley(AbelianGroup{{6}, {{2}, {4}}});
  CHECK_FALSE(split.connected);
  CHECK(split.certificate);
  try {
    apsp_metric(split.graph);
    FAIL("disconnected graph measured");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Disconnected);
  }
}

TEST_CASE("permutation Cayley graph on S_3") {
  // transpositions (1 2) and (2 3) in one-line form on {0,1,2}
  const auto g = cayley(PermutationGroup{3, {Permutation({1, 0, 2}), Permutation({0, 2, 1})}});
  CHECK(g.connected);
  CHECK(g.graph.vertex_count() == 6);
  CHECK(g.graph.edge_count() == 6);
  CHECK(regular_degree(g.graph) == 2);
  // S_3 with two adjacent transpositions is the 6-cycle
  const auto s = apsp_metric(g.graph);
  CHECK(diameter(s) == 3);
  CHECK(average_distance(s) == R(3, 2));
  CHECK(is_vertex_transitive(g.graph, g.certificate->automorphisms).status == TransitivityStatus::Certificate);
  CHECK_THROWS_AS(cayley(PermutationGroup{3, {Permutation({1, 2, 0})}}), Error);
}

TEST_CASE("bfs distances") {
  const auto q3 = hypercube(3);
  const auto d = bfs_distances(q3.graph, 0);
  for (Vertex v = 0; v < 8; ++v) CHECK(d[v] == std::popcount(v));
  const auto c = bfs_distances(cycle(12).graph, 0);
  for (int j = 0; j < 12; ++j) CHECK(c[j] == std::min(j, 12 - j));
  const auto two = Graph::from_edges(2, std::vector<std::pair<Vertex, Vertex>>{});
  CHECK(bfs_distances(two, 0)[1] == kUnreachable);
  CHECK_FALSE(is_connected(two));
}

TEST_CASE("transitive distribution equals the all-pairs distribution") {
  std::vector<GeneratedGraph> families{hypercube(8), cycle(12), cycle(13), complete(9), petersen(),
                                       cayley(AbelianGroup{{4, 6}, {{1, 0}, {3, 0}, {0, 1}, {0, 5}, {2, 3}}})};
  for (const auto& gen : families) {
    const auto fast = transitive_distribution(gen.graph, &*gen.certificate);
    const auto slow = distance_distribution(apsp_metric(gen.graph));
    REQUIRE(fast.entries.size() == slow.entries.size());
    for (std::size_t i = 0; i < fast.entries.size(); ++i) {
      CHECK(fast.entries[i].distance == slow.entries[i].distance);
      CHECK(fast.entries[i].mass == slow.entries[i].mass);
    }
  }
  const auto cyc12 = cycle(12);
  const auto c12 = transitive_distribution(cyc12.graph, &*cyc12.certificate);
  CHECK(c12.entries[0].mass == R(1, 12));
  CHECK(c12.entries[3].mass == R(1, 6));
  CHECK(c12.entries[6].mass == R(1, 12));
}

TEST_CASE("fast path refuses missing or wrong certificates") {
  const auto p = path_graph(4);
  try {
    transitive_distribution(p, nullptr);
    FAIL("no certificate accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCertificate);
  }
  // a cycle certificate does not fit the path
  const auto c4 = cycle(4);
  CHECK_THROWS_AS(transitive_distribution(p, &*c4.certificate), Error);
}

TEST_CASE("transitive antipodality from two BFS passes") {
  const auto q5 = hypercube(5);
  const auto t = transitive_antipodality(q5.graph, &*q5.certificate);
  CHECK(t.tier == AntipodalTier::StrictlyAntipodal);
  CHECK(t.diameter == 5);
  CHECK(t.antipodes_of_base == std::vector<Vertex>{31});
  const auto pg = petersen();
  const auto pt = transitive_antipodality(pg.graph, &*pg.certificate);
  CHECK(pt.tier == AntipodalTier::Antipodal);
  CHECK(pt.antipodes_of_base.size() == 6);
  const auto cyc7 = cycle(7);
  const auto c7 = transitive_antipodality(cyc7.graph, &*cyc7.certificate);
  CHECK(c7.tier == AntipodalTier::Antipodal);
}
