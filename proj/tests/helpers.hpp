#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/rational.hpp"
#include "oracle.hpp"

inline antipode::Rational R(long long num, long long den = 1) { return antipode::make_rational(num, den); }

inline std::vector<std::vector<antipode::Rational>> rational_matrix(const std::vector<std::vector<long long>>& m) {
  std::vector<std::vector<antipode::Rational>> out;
  for (const auto& row : m) {
    std::vector<antipode::Rational> r;
    for (auto x : row) r.push_back(R(x));
    out.push_back(std::move(r));
  }
  return out;
}

inline oracle::Matrix oracle_adjacency(const antipode::Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return oracle::adjacency(static_cast<int>(g.vertex_count()), edges);
}

inline antipode::Graph to_graph(const oracle::SmallGraph& s) {
  std::vector<std::pair<antipode::Vertex, antipode::Vertex>> edges;
  for (auto [u, v] : s.edges) edges.emplace_back(u, v);
  return antipode::Graph::from_edges(s.n, edges);
}

inline std::string exact(const antipode::Rational& r) { return antipode::to_exact_string(r); }

#include <random>

/// Random abelian group of order <= max_order with a random symmetric
/// connection set; retried until the Cayley graph is connected.
inline antipode::GeneratedGraph random_abelian_cayley(std::mt19937_64& rng, std::uint32_t max_order,
                                                      antipode::AbelianGroup* spec_out = nullptr) {
  for (;;) {
    antipode::AbelianGroup group;
    std::uint32_t order = 1;
    const int factors = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < factors; ++i) {
      const std::uint32_t room = max_order / order;
      if (room < 2) break;
      const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % std::min<std::uint32_t>(room - 1, 16));
      group.moduli.push_back(m);
      order *= m;
    }
    const int picks = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < picks; ++i) {
      std::vector<std::uint32_t> s(group.moduli.size()), inv(group.moduli.size());
      bool zero = true;
      for (std::size_t c = 0; c < s.size(); ++c) {
        s[c] = static_cast<std::uint32_t>(rng() % group.moduli[c]);
        inv[c] = (group.moduli[c] - s[c]) % group.moduli[c];
        zero = zero && s[c] == 0;
      }
      if (zero) continue;
      for (const auto& e : {s, inv})
        if (std::find(group.connection_set.begin(), group.connection_set.end(), e) == group.connection_set.end())
          group.connection_set.push_back(e);
    }
    if (group.connection_set.empty()) continue;
    auto gen = antipode::cayley(group);
    if (!gen.connected) continue;
    if (spec_out) *spec_out = group;
    return gen;
  }
}
