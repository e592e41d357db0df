#include <doctest.h>

#include <random>

#include "antipode/analysis.hpp"
#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/symmetry.hpp"
#include "helpers.hpp"

using namespace antipode;

TEST_CASE("random abelian Cayley graphs satisfy the theorem invariants") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 60; ++trial) {
    const auto gen = random_abelian_cayley(rng, 128);
    const auto& g = gen.graph;
    const std::size_t n = g.vertex_count();
    const auto space = apsp_metric(g);
    const auto b = check_bounds(space);
    const Rational nr(static_cast<long long>(n));
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
    CHECK(b.square_lower_ok);
    CHECK(b.square_upper_ok);
    CHECK(b.mu == 1 - 1 / nr);
    if (n >= 2) CHECK(*b.average_off_diagonal == b.average * nr / (nr - 1));

    const auto verdict = is_vertex_transitive(g, gen.certificate->automorphisms);
    CHECK(verdict.status == TransitivityStatus::Certificate);
    const auto searched = automorphism_search(g);
    CHECK(searched.transitive());

    const auto fast = transitive_distribution(g, &*gen.certificate);
    const auto slow = distance_distribution(space);
    REQUIRE(fast.entries.size() == slow.entries.size());
    for (std::size_t i = 0; i < fast.entries.size(); ++i) CHECK(fast.entries[i].mass == slow.entries[i].mass);

    if (n < 2) continue;
    const auto r = classify_antipodality(space, &searched);
    CHECK(r.tier != AntipodalTier::NotAntipodal);  // translations reach every antipode
    const bool strict = r.tier == AntipodalTier::StrictlyAntipodal;
    CHECK(strict == b.lower_tight);
    CHECK(detect_extremal_upper(space).extremal == b.upper_tight);
    if (strict) {
      CHECK(n % 2 == 0);
      CHECK(symmetry_check(slow, b.diameter).symmetric);
      CHECK(verify_involution_properties(*r.antipodal_map, space, searched).all());
    }
    const auto t = transitive_antipodality(g, &*gen.certificate);
    CHECK(t.tier == r.tier);
  }
}

TEST_CASE("random permutation Cayley graphs on S_4") {
  std::mt19937_64 rng(77);
  std::vector<std::vector<Vertex>> all;
  std::vector<Vertex> p{0, 1, 2, 3};
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (int trial = 0; trial < 20; ++trial) {
    PermutationGroup group{4, {}};
    const int picks = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < picks; ++i) {
      Permutation s(all[1 + rng() % (all.size() - 1)]);
      for (const auto& e : {s, s.inverse()})
        if (std::find(group.connection_set.begin(), group.connection_set.end(), e) == group.connection_set.end())
          group.connection_set.push_back(e);
    }
    const auto gen = cayley(group);
    CHECK(gen.graph.vertex_count() == 24);
    CHECK(is_vertex_transitive(gen.graph, gen.certificate->automorphisms).status == TransitivityStatus::Certificate);
    if (!gen.connected) continue;
    const auto space = apsp_metric(gen.graph);
    const auto b = check_bounds(space);
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
    const auto r = classify_antipodality(space, &gen.certificate->automorphisms);
    CHECK((r.tier == AntipodalTier::StrictlyAntipodal) == b.lower_tight);
    const auto auts = automorphism_search(gen.graph);
    CHECK(auts.transitive());
  }
}

TEST_CASE("every operation agrees with brute force on connected graphs up to 6 vertices") {
  const auto all = oracle::graphs_up_to(6);
  CHECK(all[6].size() == 156);
  for (int n = 2; n <= 6; ++n)
    for (const auto& s : all[n]) {
      const auto adj = oracle::adjacency(s.n, s.edges);
      const auto d = oracle::floyd_warshall(adj);
      if (!oracle::connected(d)) continue;
      const auto g = to_graph(s);
      const auto group = oracle::symmetries(adj);
      const auto auts = automorphism_search(g);
      CHECK(*auts.group_order() == group.size());
      const bool transitive = oracle::orbits(n, group).size() == 1;
      const auto v = is_vertex_transitive(g, auts);
      CHECK((v.status == TransitivityStatus::Certificate) == transitive);
      CHECK(v.status != TransitivityStatus::Inconclusive);
      const auto space = apsp_metric(g);
      const auto r = classify_antipodality(space, &auts);
      CHECK(static_cast<int>(r.tier) == static_cast<int>(oracle::tier(d, group)));
      for (Vertex x = 0; x < static_cast<Vertex>(n); ++x)
        for (Vertex y = 0; y < static_cast<Vertex>(n); ++y) {
          bool related = false;
          for (const auto& p : group) related = related || p[x] == static_cast<int>(y);
          const auto m = find_mapping_automorphism(x, y, g, auts);
          CHECK(m.has_value() == related);
        }
    }
}
