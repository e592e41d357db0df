#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/permutation.hpp"

namespace antipode {

/// Vertex colouring; colours are 0 .. class_count-1.
struct ColoredPartition {
  std::vector<std::uint32_t> colors;
  std::size_t class_count = 0;

  static ColoredPartition uniform(std::size_t n);
  /// `v` alone in colour 0, everything else colour 1.
  static ColoredPartition individualized(std::size_t n, Vertex v);
  std::vector<std::vector<Vertex>> classes() const;
};

/// Coarsest equitable refinement (1-dimensional Weisfeiler-Leman). Colours of
/// the result are numbered by the order in which the refinement created the
/// classes, which is a labelling-invariant order.
ColoredPartition refine_colors(const Graph& g, const ColoredPartition& initial);
/// Same refinement on the complete graph whose edges are coloured by distance.
ColoredPartition refine_colors(const FiniteMetricSpace& space, const ColoredPartition& initial);

struct SearchOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// Generators of Aut(g) by individualization-refinement. Every generator is
/// verified edge by edge. On budget exhaustion the result is flagged truncated
/// and holds whatever generators were found.
AutomorphismSet automorphism_search(const Graph& g, SearchOptions options = {});

/// Generators of the isometry group of a finite metric space.
AutomorphismSet isometry_search(const FiniteMetricSpace& space, SearchOptions options = {});

enum class TransitivityStatus { Certificate, Refutation, Inconclusive };
std::string_view transitivity_status_name(TransitivityStatus status) noexcept;

struct TransitivityVerdict {
  TransitivityStatus status = TransitivityStatus::Inconclusive;
  std::optional<TransitivityCertificate> certificate;
  std::string reason;
  /// Two vertices that no automorphism exchanges (refutation only).
  std::optional<std::pair<Vertex, Vertex>> separated;
};

/// Certificate when the generators act with a single orbit; refutation from
/// the orbit partition of a complete search or from an equitable-refinement
/// invariant; Inconclusive otherwise.
TransitivityVerdict is_vertex_transitive(const Graph& g, const AutomorphismSet& auts);
TransitivityVerdict is_homogeneous(const FiniteMetricSpace& space, const AutomorphismSet& isometries);

/// Closure of {v} under the generators, ascending.
std::vector<Vertex> orbit_of(Vertex v, const AutomorphismSet& auts);

/// An automorphism taking x to y composed from Schreier words, or nullopt
/// when y is outside the orbit of x.
std::optional<Permutation> find_mapping_automorphism(Vertex x, Vertex y, const Graph& g,
                                                     const AutomorphismSet& auts);

}  // namespace antipode
