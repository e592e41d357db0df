#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "antipode/metric.hpp"
#include "antipode/permutation.hpp"

namespace antipode {

struct GraphLimits {
  std::size_t generator_vertex_cap = std::size_t{1} << 26;
  std::size_t apsp_vertex_cap = std::size_t{1} << 20;
  std::size_t fast_path_vertex_cap = std::size_t{1} << 26;
};

/// Simple undirected graph in compressed adjacency form; neighbor lists are
/// sorted and duplicate free.
class Graph {
 public:
  Graph() = default;

  /// Throws BadParameter on self-loops or out-of-range endpoints; duplicate
  /// edges collapse.
  static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
  /// Compressed form; rows are sorted here, then checked for loops,
  /// duplicates and symmetry.
  static Graph from_csr(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, lexicographic

  /// Permutation maps every edge onto an edge.
  bool preserves_adjacency(const Permutation& p) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// How vertex transitivity was established.
enum class CertificateSource { Construction, Search };

struct TransitivityCertificate {
  CertificateSource source = CertificateSource::Construction;
  std::string basis;
  AutomorphismSet automorphisms;  // single orbit
};

struct GeneratedGraph {
  Graph graph;
  std::optional<TransitivityCertificate> certificate;
  std::optional<AutomorphismSet> known_automorphisms;  // generators of the full group, when known
  bool connected = true;
};

/// Vertices are d-bit patterns, adjacent at Hamming distance 1.
GeneratedGraph hypercube(unsigned d, const GraphLimits& limits = {});
GeneratedGraph cycle(std::size_t n);
GeneratedGraph complete(std::size_t n);
/// Kneser graph K(5, 2): 2-subsets of {0..4}, adjacent when disjoint.
GeneratedGraph petersen();
/// Path and star graphs, the usual non-transitive controls.
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

struct AbelianGroup {
  std::vector<std::uint32_t> moduli;                       // Z_m1 x ... x Z_mr
  std::vector<std::vector<std::uint32_t>> connection_set;  // elements as coordinate tuples
};

struct PermutationGroup {
  std::uint32_t degree = 0;                 // the group is S_degree
  std::vector<Permutation> connection_set;  // permutations of {0..degree-1}
};

using CayleySpec = std::variant<AbelianGroup, PermutationGroup>;

/// Cayley graph: x ~ y iff x^-1 y is in the connection set. Abelian vertices
/// are mixed-radix indices (first coordinate most significant), permutation
/// vertices are lexicographic ranks. A connection set that does not generate
/// the group gives `connected == false`; the translation certificate is still
/// attached because translations act transitively either way.
GeneratedGraph cayley(const CayleySpec& spec, const GraphLimits& limits = {});

inline constexpr std::int32_t kUnreachable = -1;

/// Unweighted shortest-path distances from `source`; kUnreachable marks
/// vertices in other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

/// Shortest-path metric with uniform weights. Triangle inequality is certified
/// by checking the Bellman equations d(v, t) = 1 + min over neighbours u of
/// d(u, t) for every v != t. Throws Disconnected with a witness vertex
/// outside the component of vertex 0.
FiniteMetricSpace apsp_metric(const Graph& g, const GraphLimits& limits = {});

/// Distribution from a single BFS at vertex 0, valid because the certificate
/// makes every vertex's distance profile identical. Throws NoCertificate when
/// the certificate is missing or does not act transitively on `g`.
DistanceDistribution transitive_distribution(const Graph& g, const TransitivityCertificate* certificate,
                                             const GraphLimits& limits = {});

/// Result of analysing antipodality from two BFS passes (vertex 0 and its
/// antipode); sufficient under a transitivity certificate.
struct TransitiveAntipodality {
  AntipodalTier tier = AntipodalTier::NotAntipodal;
  std::int32_t diameter = 0;
  std::vector<Vertex> antipodes_of_base;
  std::uint64_t strictness_violations_at_base = 0;
};

TransitiveAntipodality transitive_antipodality(const Graph& g, const TransitivityCertificate* certificate,
                                               const GraphLimits& limits = {});

}  // namespace antipode
