#include "antipode/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "antipode/error.hpp"
#include "antipode/parallel.hpp"

namespace antipode {

Graph Graph::from_csr(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != neighbors.size())
    throw Error(ErrorCode::BadParameter, "malformed adjacency offsets");
  const std::size_t n = offsets.size() - 1;
  Graph g;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  for (std::size_t v = 0; v < n; ++v) {
    auto begin = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto end = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(begin, end);
    if (std::adjacent_find(begin, end) != end)
      throw Error(ErrorCode::BadParameter, "duplicate neighbour at vertex " + std::to_string(v), {v});
    for (auto it = begin; it != end; ++it) {
      if (*it >= n) throw Error(ErrorCode::BadParameter, "neighbour out of range at vertex " + std::to_string(v), {v});
      if (*it == v) throw Error(ErrorCode::BadParameter, "self-loop at vertex " + std::to_string(v), {v});
    }
  }
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v))
      if (!g.adjacent(u, v))
        throw Error(ErrorCode::BadParameter, "adjacency is not symmetric at " + std::to_string(v), {v, u});
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::size_t> degree(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::BadParameter, "edge endpoint out of range", {u, v});
    if (u == v) throw Error(ErrorCode::BadParameter, "self-loop at vertex " + std::to_string(u), {u});
  }
  std::vector<std::pair<Vertex, Vertex>> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Vertex> neighbors;
  neighbors.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++offsets[u + 1];
    neighbors.push_back(v);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  Graph g;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::preserves_adjacency(const Permutation& p) const {
  if (p.size() != vertex_count()) return false;
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v && !adjacent(p(u), p(v))) return false;
  return true;
}

namespace {

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap)
    throw Error(ErrorCode::TooLarge, std::string(what) + " has " + std::to_string(n) + " vertices, cap is " +
                                         std::to_string(cap));
}

template <typename NeighborFn>
Graph regular_graph(std::size_t n, std::size_t degree, NeighborFn&& neighbor) {
  std::vector<std::size_t> offsets(n + 1);
  for (std::size_t v = 0; v <= n; ++v) offsets[v] = v * degree;
  std::vector<Vertex> neighbors(n * degree);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < degree; ++i) neighbors[v * degree + i] = neighbor(static_cast<Vertex>(v), i);
  return Graph::from_csr(std::move(offsets), std::move(neighbors));
}

template <typename ImageFn>
Permutation make_permutation(std::size_t n, ImageFn&& image) {
  std::vector<Vertex> images(n);
  for (std::size_t v = 0; v < n; ++v) images[v] = image(static_cast<Vertex>(v));
  return Permutation(std::move(images));
}

TransitivityCertificate construction_certificate(std::size_t n, std::vector<Permutation> gens, std::string basis) {
  TransitivityCertificate cert;
  cert.source = CertificateSource::Construction;
  cert.basis = basis;
  cert.automorphisms = AutomorphismSet(n, std::move(gens), AutomorphismOrigin::Construction, std::move(basis));
  return cert;
}

}  // namespace

GeneratedGraph hypercube(unsigned d, const GraphLimits& limits) {
  if (d < 1 || d > 30) throw Error(ErrorCode::BadParameter, "hypercube dimension must be in [1, 30]");
  const std::size_t n = std::size_t{1} << d;
  check_cap(n, limits.generator_vertex_cap, "hypercube");
  GeneratedGraph out;
  out.graph = regular_graph(n, d, [](Vertex v, std::size_t i) { return v ^ (Vertex{1} << i); });

  std::vector<Permutation> flips;
  for (unsigned i = 0; i < d; ++i) flips.push_back(make_permutation(n, [i](Vertex v) { return v ^ (Vertex{1} << i); }));
  std::vector<Permutation> full = flips;
  for (unsigned i = 0; i + 1 < d; ++i)
    full.push_back(make_permutation(n, [i](Vertex v) {
      const Vertex a = (v >> i) & 1u, b = (v >> (i + 1)) & 1u;
      return a == b ? v : v ^ ((Vertex{1} << i) | (Vertex{1} << (i + 1)));
    }));
  out.certificate = construction_certificate(n, std::move(flips), "translations of (Z_2)^" + std::to_string(d));
  out.known_automorphisms =
      AutomorphismSet(n, std::move(full), AutomorphismOrigin::Construction, "bit flips and adjacent coordinate swaps");
  return out;
}

GeneratedGraph cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::BadParameter, "cycle needs at least 3 vertices");
  GeneratedGraph out;
  out.graph = regular_graph(n, 2, [n](Vertex v, std::size_t i) {
    return static_cast<Vertex>(i == 0 ? (v + 1) % n : (v + n - 1) % n);
  });
  auto rotation = make_permutation(n, [n](Vertex v) { return static_cast<Vertex>((v + 1) % n); });
  auto reflection = make_permutation(n, [n](Vertex v) { return static_cast<Vertex>((n - v) % n); });
  out.certificate = construction_certificate(n, {rotation}, "rotations of Z_" + std::to_string(n));
  out.known_automorphisms =
      AutomorphismSet(n, {rotation, reflection}, AutomorphismOrigin::Construction, "rotation and reflection");
  return out;
}

GeneratedGraph complete(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParameter, "complete graph needs at least 2 vertices");
  GeneratedGraph out;
  out.graph = regular_graph(n, n - 1, [](Vertex v, std::size_t i) { return static_cast<Vertex>(i < v ? i : i + 1); });
  auto rotation = make_permutation(n, [n](Vertex v) { return static_cast<Vertex>((v + 1) % n); });
  auto swap01 = make_permutation(n, [](Vertex v) { return v == 0 ? 1u : v == 1 ? 0u : v; });
  out.certificate = construction_certificate(n, {rotation}, "rotations of Z_" + std::to_string(n));
  out.known_automorphisms =
      AutomorphismSet(n, {rotation, swap01}, AutomorphismOrigin::Construction, "n-cycle and transposition (0 1)");
  return out;
}

GeneratedGraph petersen() {
  std::vector<std::pair<Vertex, Vertex>> subsets;
  for (Vertex a = 0; a < 5; ++a)
    for (Vertex b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
  auto index_of = [&](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return static_cast<Vertex>(std::find(subsets.begin(), subsets.end(), std::make_pair(a, b)) - subsets.begin());
  };
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < 10; ++i)
    for (Vertex j = i + 1; j < 10; ++j) {
      const auto [a, b] = subsets[i];
      const auto [c, d] = subsets[j];
      if (a != c && a != d && b != c && b != d) edges.emplace_back(i, j);
    }
  auto induced = [&](auto&& point_map) {
    return make_permutation(10, [&](Vertex v) { return index_of(point_map(subsets[v].first), point_map(subsets[v].second)); });
  };
  auto five_cycle = induced([](Vertex p) { return (p + 1) % 5; });
  auto transposition = induced([](Vertex p) { return p == 0 ? 1u : p == 1 ? 0u : p; });

  GeneratedGraph out;
  out.graph = Graph::from_edges(10, edges);
  out.certificate = construction_certificate(10, {five_cycle, transposition}, "S_5 acting on 2-subsets of {0..4}");
  out.known_automorphisms = out.certificate->automorphisms;
  return out;
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

namespace {

GeneratedGraph abelian_cayley(const AbelianGroup& group, const GraphLimits& limits) {
  if (group.moduli.empty()) throw Error(ErrorCode::BadParameter, "abelian group needs at least one modulus");
  std::size_t order = 1;
  for (auto m : group.moduli) {
    if (m == 0) throw Error(ErrorCode::BadParameter, "moduli must be positive");
    if (order > limits.generator_vertex_cap / m)
      throw Error(ErrorCode::TooLarge, "Cayley graph exceeds the vertex cap of " + std::to_string(limits.generator_vertex_cap));
    order *= m;
  }
  check_cap(order, limits.generator_vertex_cap, "Cayley graph");
  const std::size_t r = group.moduli.size();

  auto encode = [&](const std::vector<std::uint32_t>& coords) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r; ++i) idx = idx * group.moduli[i] + coords[i];
    return idx;
  };
  auto decode = [&](std::size_t idx) {
    std::vector<std::uint32_t> coords(r);
    for (std::size_t i = r; i-- > 0;) {
      coords[i] = static_cast<std::uint32_t>(idx % group.moduli[i]);
      idx /= group.moduli[i];
    }
    return coords;
  };

  std::vector<std::vector<std::uint32_t>> connection;
  for (const auto& s : group.connection_set) {
    if (s.size() != r) throw Error(ErrorCode::BadParameter, "connection element has wrong number of coordinates");
    std::vector<std::uint32_t> reduced(r);
    for (std::size_t i = 0; i < r; ++i) reduced[i] = s[i] % group.moduli[i];
    if (std::all_of(reduced.begin(), reduced.end(), [](auto c) { return c == 0; }))
      throw Error(ErrorCode::ContainsIdentity, "connection set contains the identity");
    connection.push_back(std::move(reduced));
  }
  std::sort(connection.begin(), connection.end());
  connection.erase(std::unique(connection.begin(), connection.end()), connection.end());
  for (const auto& s : connection) {
    std::vector<std::uint32_t> neg(r);
    for (std::size_t i = 0; i < r; ++i) neg[i] = (group.moduli[i] - s[i]) % group.moduli[i];
    if (!std::binary_search(connection.begin(), connection.end(), neg))
      throw Error(ErrorCode::NotSymmetricConnectionSet, "connection set is not closed under inverses");
  }

  // translation by an element, as an index map
  auto translate = [&](std::size_t idx, const std::vector<std::uint32_t>& s) {
    auto coords = decode(idx);
    for (std::size_t i = 0; i < r; ++i) coords[i] = (coords[i] + s[i]) % group.moduli[i];
    return static_cast<Vertex>(encode(coords));
  };

  GeneratedGraph out;
  out.graph = regular_graph(order, connection.size(), [&](Vertex v, std::size_t i) { return translate(v, connection[i]); });
  out.connected = is_connected(out.graph);

  std::vector<Permutation> gens;
  std::string basis = "translations of Z_" + std::to_string(group.moduli[0]);
  for (std::size_t i = 1; i < r; ++i) basis += " x Z_" + std::to_string(group.moduli[i]);
  for (std::size_t i = 0; i < r; ++i) {
    if (group.moduli[i] == 1) continue;
    std::vector<std::uint32_t> unit(r, 0);
    unit[i] = 1;
    gens.push_back(make_permutation(order, [&](Vertex v) { return translate(v, unit); }));
  }
  out.certificate = construction_certificate(order, std::move(gens), std::move(basis));
  return out;
}

std::size_t lehmer_rank(const std::vector<Vertex>& perm) {
  std::size_t rank = 0;
  const std::size_t k = perm.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (k - i) + smaller;
  }
  return rank;
}

GeneratedGraph permutation_cayley(const PermutationGroup& group, const GraphLimits& limits) {
  const std::size_t k = group.degree;
  if (k == 0) throw Error(ErrorCode::BadParameter, "permutation degree must be positive");
  std::size_t order = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    order *= i;
    check_cap(order, limits.generator_vertex_cap, "Cayley graph");
  }

  std::vector<Permutation> connection;
  for (const auto& s : group.connection_set) {
    if (s.size() != k) throw Error(ErrorCode::BadParameter, "connection permutation has wrong degree");
    if (s.is_identity()) throw Error(ErrorCode::ContainsIdentity, "connection set contains the identity");
    if (std::find(connection.begin(), connection.end(), s) == connection.end()) connection.push_back(s);
  }
  for (const auto& s : connection)
    if (std::find(connection.begin(), connection.end(), s.inverse()) == connection.end())
      throw Error(ErrorCode::NotSymmetricConnectionSet, "connection set is not closed under inverses");

  std::vector<std::vector<Vertex>> elements;
  elements.reserve(order);
  std::vector<Vertex> current(k);
  std::iota(current.begin(), current.end(), 0u);
  do elements.push_back(current);
  while (std::next_permutation(current.begin(), current.end()));

  // y = x o s, i.e. y(i) = x(s(i))
  auto right_multiply = [&](const std::vector<Vertex>& x, const Permutation& s) {
    std::vector<Vertex> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = x[s(static_cast<Vertex>(i))];
    return static_cast<Vertex>(lehmer_rank(y));
  };
  auto left_multiply = [&](const Permutation& g, const std::vector<Vertex>& x) {
    std::vector<Vertex> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = g(x[i]);
    return static_cast<Vertex>(lehmer_rank(y));
  };

  GeneratedGraph out;
  out.graph = regular_graph(order, connection.size(),
                            [&](Vertex v, std::size_t i) { return right_multiply(elements[v], connection[i]); });
  out.connected = is_connected(out.graph);

  std::vector<Permutation> gens;
  if (k >= 2) {
    std::vector<Vertex> swap(k), shift(k);
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < k; ++i) shift[i] = static_cast<Vertex>((i + 1) % k);
    for (const auto& g : {Permutation(swap), Permutation(shift)})
      gens.push_back(make_permutation(order, [&](Vertex v) { return left_multiply(g, elements[v]); }));
  }
  out.certificate = construction_certificate(order, std::move(gens), "left translations of S_" + std::to_string(k));
  return out;
}

}  // namespace

GeneratedGraph cayley(const CayleySpec& spec, const GraphLimits& limits) {
  if (const auto* abelian = std::get_if<AbelianGroup>(&spec)) return abelian_cayley(*abelian, limits);
  return permutation_cayley(std::get<PermutationGroup>(spec), limits);
}

namespace {

void bfs_into(const Graph& g, Vertex source, std::vector<std::int32_t>& dist, std::vector<Vertex>& queue) {
  const std::size_t n = g.vertex_count();
  dist.assign(n, kUnreachable);
  queue.resize(n);
  std::size_t head = 0, tail = 0;
  dist[source] = 0;
  queue[tail++] = source;
  while (head < tail) {
    const Vertex u = queue[head++];
    const std::int32_t next = dist[u] + 1;
    for (Vertex w : g.neighbors(u))
      if (dist[w] == kUnreachable) {
        dist[w] = next;
        queue[tail++] = w;
      }
  }
}

}  // namespace

std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.vertex_count()) throw Error(ErrorCode::BadParameter, "source vertex out of range", {source});
  std::vector<std::int32_t> dist;
  std::vector<Vertex> queue;
  bfs_into(g, source, dist, queue);
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::find(dist.begin(), dist.end(), kUnreachable) == dist.end();
}

namespace {

void require_connected_from_zero(const std::vector<std::int32_t>& dist) {
  const auto it = std::find(dist.begin(), dist.end(), kUnreachable);
  if (it != dist.end()) {
    const auto witness = static_cast<std::size_t>(it - dist.begin());
    throw Error(ErrorCode::Disconnected,
                "graph is disconnected: vertex " + std::to_string(witness) + " is not reachable from vertex 0",
                {0, witness});
  }
}

}  // namespace

FiniteMetricSpace apsp_metric(const Graph& g, const GraphLimits& limits) {
  const std::size_t n = g.vertex_count();
  check_cap(n, limits.apsp_vertex_cap, "all-pairs metric");
  if (n == 0) return FiniteMetricSpace::from_certified(0, 1, {});
  require_connected_from_zero(bfs_distances(g, 0));

  std::vector<std::int64_t> matrix(n * n);
  parallel_for(n, [&](std::size_t s) {
    std::vector<std::int32_t> dist;
    std::vector<Vertex> queue;
    bfs_into(g, static_cast<Vertex>(s), dist, queue);
    std::copy(dist.begin(), dist.end(), matrix.begin() + static_cast<std::ptrdiff_t>(s * n));
  });

  // Bellman equations per row: the unique solution is the shortest-path
  // distance, so the matrix is a shortest-path metric and the triangle
  // inequality holds.
  std::vector<std::size_t> bad(n, n);
  parallel_for(n, [&](std::size_t t) {
    const std::int64_t* row = matrix.data() + t * n;
    if (row[t] != 0) {
      bad[t] = t;
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (v == t) continue;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (Vertex u : g.neighbors(v)) best = std::min(best, row[u]);
      if (row[v] != best + 1) {
        bad[t] = v;
        return;
      }
    }
  });
  for (std::size_t t = 0; t < n; ++t)
    if (bad[t] != n)
      throw Error(ErrorCode::TriangleViolation,
                  "distance row " + std::to_string(t) + " violates the shortest-path equations at " +
                      std::to_string(bad[t]),
                  {t, bad[t]});
  return FiniteMetricSpace::from_certified(n, 1, std::move(matrix));
}

namespace {

void require_certificate(const Graph& g, const TransitivityCertificate* certificate) {
  if (!certificate) throw Error(ErrorCode::NoCertificate, "no transitivity certificate supplied");
  const auto& auts = certificate->automorphisms;
  if (auts.degree() != g.vertex_count() || !auts.transitive())
    throw Error(ErrorCode::NoCertificate, "certificate does not act transitively on this graph");
  for (const auto& p : auts.generators())
    if (!g.preserves_adjacency(p))
      throw Error(ErrorCode::NoCertificate, "certificate generator is not an automorphism of this graph");
}

}  // namespace

DistanceDistribution transitive_distribution(const Graph& g, const TransitivityCertificate* certificate,
                                             const GraphLimits& limits) {
  check_cap(g.vertex_count(), limits.fast_path_vertex_cap, "fast path");
  require_certificate(g, certificate);
  if (g.vertex_count() == 0) return {};
  const auto dist = bfs_distances(g, 0);
  require_connected_from_zero(dist);
  const std::int32_t diam = *std::max_element(dist.begin(), dist.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(diam) + 1, 0);
  for (auto d : dist) ++counts[static_cast<std::size_t>(d)];
  std::vector<std::int64_t> values(counts.size());
  std::iota(values.begin(), values.end(), 0);
  return distribution_from_counts(values, counts, 1, BigInt(g.vertex_count()));
}

TransitiveAntipodality transitive_antipodality(const Graph& g, const TransitivityCertificate* certificate,
                                               const GraphLimits& limits) {
  check_cap(g.vertex_count(), limits.fast_path_vertex_cap, "fast path");
  require_certificate(g, certificate);
  if (g.vertex_count() < 2) throw Error(ErrorCode::BadParameter, "antipodality needs at least two points");
  const auto from_base = bfs_distances(g, 0);
  require_connected_from_zero(from_base);

  TransitiveAntipodality out;
  out.diameter = *std::max_element(from_base.begin(), from_base.end());
  for (Vertex v = 0; v < from_base.size(); ++v)
    if (from_base[v] == out.diameter) out.antipodes_of_base.push_back(v);
  // Transitivity supplies the isometry from any point to any of its antipodes.
  out.tier = AntipodalTier::Antipodal;
  if (out.antipodes_of_base.size() != 1) return out;
  out.tier = AntipodalTier::UniquelyAntipodal;
  const auto from_antipode = bfs_distances(g, out.antipodes_of_base.front());
  for (std::size_t y = 0; y < from_base.size(); ++y)
    if (from_base[y] + from_antipode[y] != out.diameter) ++out.strictness_violations_at_base;
  if (out.strictness_violations_at_base == 0) out.tier = AntipodalTier::StrictlyAntipodal;
  return out;
}

}  // namespace antipode
