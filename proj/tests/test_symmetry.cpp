#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "antipode/error.hpp"
#include "antipode/graph.hpp"
#include "antipode/symmetry.hpp"
#include "helpers.hpp"

using namespace antipode;

namespace {

std::vector<oracle::Perm> to_oracle(const std::vector<Permutation>& gens) {
  std::vector<oracle::Perm> out;
  for (const auto& p : gens) {
    oracle::Perm q;
    for (auto v : p.images()) q.push_back(static_cast<int>(v));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<int>> as_int(const std::vector<std::vector<Vertex>>& parts) {
  std::vector<std::vector<int>> out;
  for (const auto& p : parts) out.emplace_back(p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::vector<Vertex>> class_set(const ColoredPartition& p) {
  std::set<std::vector<Vertex>> out;
  for (const auto& c : p.classes())
    if (!c.empty()) out.insert(c);
  return out;
}

}  // namespace

TEST_CASE("colour refinement") {
  const auto p3 = refine_colors(path_graph(3), ColoredPartition::uniform(3));
  CHECK(p3.class_count == 2);
  CHECK(p3.colors[0] == p3.colors[2]);
  CHECK(p3.colors[0] != p3.colors[1]);

  CHECK(refine_colors(hypercube(3).graph, ColoredPartition::uniform(8)).class_count == 1);

  const auto c6 = refine_colors(cycle(6).graph, ColoredPartition::individualized(6, 0));
  CHECK(class_set(c6) == std::set<std::vector<Vertex>>{{0}, {1, 5}, {2, 4}, {3}});
}

TEST_CASE("refinement is idempotent and never merges classes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng() % 20;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng() % 4 == 0) edges.emplace_back(u, v);
    const auto g = Graph::from_edges(n, edges);
    ColoredPartition initial{std::vector<std::uint32_t>(n), 3};
    for (auto& c : initial.colors) c = static_cast<std::uint32_t>(rng() % 3);
    const auto once = refine_colors(g, initial);
    const auto twice = refine_colors(g, once);
    CHECK(class_set(once) == class_set(twice));
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (initial.colors[u] != initial.colors[v]) CHECK(once.colors[u] != once.colors[v]);
    // equitable: same colour => same multiset of neighbour colours
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        if (once.colors[u] != once.colors[v]) continue;
        std::multiset<std::uint32_t> a, b;
        for (auto w : g.neighbors(u)) a.insert(once.colors[w]);
        for (auto w : g.neighbors(v)) b.insert(once.colors[w]);
        CHECK(a == b);
      }
  }
}

TEST_CASE("automorphism group orders") {
  CHECK(*automorphism_search(cycle(4).graph).group_order() == 8);
  CHECK(*automorphism_search(complete(4).graph).group_order() == 24);
  CHECK(*automorphism_search(path_graph(3)).group_order() == 2);
  CHECK(*automorphism_search(petersen().graph).group_order() == 120);
  CHECK(*automorphism_search(hypercube(5).graph).group_order() == 32 * 120);
  CHECK(*automorphism_search(star_graph(5)).group_order() == 120);
  CHECK(*automorphism_search(complete(12).graph).group_order() == BigInt(479001600));
}

TEST_CASE("generated group equals the closure of the search generators") {
  for (const auto& g : {cycle(6).graph, petersen().graph, path_graph(5), hypercube(3).graph}) {
    const auto auts = automorphism_search(g);
    const auto all = oracle::symmetries(oracle_adjacency(g));
    CHECK(oracle::closure_size(static_cast<int>(g.vertex_count()), to_oracle(auts.generators())) == all.size());
    CHECK(BigInt(all.size()) == *auts.group_order());
    CHECK(as_int(auts.orbit_partition()) == oracle::orbits(static_cast<int>(g.vertex_count()), all));
  }
}

TEST_CASE("vertex transitivity verdicts") {
  const auto pv = is_vertex_transitive(petersen().graph, automorphism_search(petersen().graph));
  CHECK(pv.status == TransitivityStatus::Certificate);
  REQUIRE(pv.certificate);
  CHECK(pv.certificate->source == CertificateSource::Search);
  CHECK(orbit_of(0, pv.certificate->automorphisms).size() == 10);

  const auto p3 = path_graph(3);
  const auto rv = is_vertex_transitive(p3, automorphism_search(p3));
  CHECK(rv.status == TransitivityStatus::Refutation);
  CHECK(rv.reason.find("degree") != std::string::npos);

  CHECK(is_vertex_transitive(hypercube(4).graph, automorphism_search(hypercube(4).graph)).status ==
        TransitivityStatus::Certificate);
  const auto star = star_graph(4);
  CHECK(is_vertex_transitive(star, automorphism_search(star)).status == TransitivityStatus::Refutation);
}

TEST_CASE("regular but not transitive graphs are refuted through the orbits") {
  // Two disjoint triangles plus a 6-cycle is 2-regular: refinement sees one
  // class, only the complete orbit partition refutes.
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  for (Vertex v = 0; v < 6; ++v) edges.emplace_back(6 + v, 6 + (v + 1) % 6);
  const auto g = Graph::from_edges(12, edges);
  CHECK(refine_colors(g, ColoredPartition::uniform(12)).class_count == 1);
  const auto auts = automorphism_search(g);
  const auto v = is_vertex_transitive(g, auts);
  CHECK(v.status == TransitivityStatus::Refutation);
  CHECK(v.reason.find("orbits") != std::string::npos);
}

TEST_CASE("truncated searches may certify but never refute") {
  const auto c8 = cycle(8).graph;
  const auto tiny = automorphism_search(c8, SearchOptions{1});
  CHECK(tiny.truncated());
  CHECK_FALSE(tiny.complete());
  const auto v = is_vertex_transitive(c8, tiny);
  CHECK(v.status != TransitivityStatus::Refutation);

  // the regular non-transitive graph from above, cut short: inconclusive
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  for (Vertex u = 0; u < 6; ++u) edges.emplace_back(6 + u, 6 + (u + 1) % 6);
  const auto g = Graph::from_edges(12, edges);
  const auto cut = automorphism_search(g, SearchOptions{1});
  CHECK(cut.truncated());
  CHECK(is_vertex_transitive(g, cut).status == TransitivityStatus::Inconclusive);
}

TEST_CASE("orbits") {
  const auto q3 = hypercube(3);
  CHECK(orbit_of(0, q3.certificate->automorphisms).size() == 8);

  const auto p3 = path_graph(3);
  CHECK(orbit_of(1, automorphism_search(p3)) == std::vector<Vertex>{1});

  std::vector<Vertex> rot2(6);
  for (Vertex v = 0; v < 6; ++v) rot2[v] = (v + 2) % 6;
  const AutomorphismSet even(6, {Permutation(rot2)}, AutomorphismOrigin::Construction, "rotation by 2");
  CHECK(orbit_of(0, even) == std::vector<Vertex>{0, 2, 4});
  CHECK(orbit_of(3, even) == std::vector<Vertex>{1, 3, 5});
}

TEST_CASE("mapping automorphisms") {
  const auto q3 = hypercube(3);
  const auto m = find_mapping_automorphism(0, 7, q3.graph, q3.certificate->automorphisms);
  REQUIRE(m);
  CHECK((*m)(0) == 7);
  // composed from single-bit flips: a translation, so x -> x ^ 7 everywhere
  for (Vertex v = 0; v < 8; ++v) CHECK((*m)(v) == (v ^ 7u));

  const auto c12 = cycle(12);
  const auto r = find_mapping_automorphism(0, 6, c12.graph, c12.certificate->automorphisms);
  REQUIRE(r);
  for (Vertex v = 0; v < 12; ++v) CHECK((*r)(v) == (v + 6) % 12);

  const auto p3 = path_graph(3);
  CHECK_FALSE(find_mapping_automorphism(1, 0, p3, automorphism_search(p3)));

  // every pair in the same orbit maps, and only those
  const auto pg = petersen();
  const auto auts = automorphism_search(pg.graph);
  for (Vertex x = 0; x < 10; ++x)
    for (Vertex y = 0; y < 10; ++y) {
      const auto f = find_mapping_automorphism(x, y, pg.graph, auts);
      REQUIRE(f);
      CHECK((*f)(x) == y);
    }
}

TEST_CASE("isometry search on metric spaces") {
  const auto pg = petersen();
  const auto iso = isometry_search(apsp_metric(pg.graph));
  CHECK(*iso.group_order() == 120);
  const auto v = is_homogeneous(apsp_metric(pg.graph), iso);
  CHECK(v.status == TransitivityStatus::Certificate);

  // non-homogeneous: a 3-point space with distances 1, 2, 2
  const auto s = validate_metric(rational_matrix({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
  const auto si = isometry_search(s);
  CHECK(*si.group_order() == 2);
  CHECK(is_homogeneous(s, si).status == TransitivityStatus::Refutation);
}

TEST_CASE("evidence that is not an automorphism is rejected") {
  const auto p4 = path_graph(4);
  const AutomorphismSet bogus(4, {Permutation({1, 0, 2, 3})}, AutomorphismOrigin::Construction, "bogus");
  CHECK_THROWS_AS(is_vertex_transitive(p4, bogus), Error);
  const AutomorphismSet wrong_size(3, {}, AutomorphismOrigin::Construction, "none");
  CHECK_THROWS_AS(is_vertex_transitive(p4, wrong_size), Error);
}
