#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/permutation.hpp"

namespace antipode::detail {

/// Adjacency with optional edge colours. Graphs use a single colour; a metric
/// space becomes the complete graph coloured by distance rank.
struct ColoredAdjacency {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<Vertex> targets;        // sorted per row
  std::vector<std::uint32_t> colors;  // parallel to targets, empty for one colour

  static ColoredAdjacency from_graph(const Graph& g);
  static ColoredAdjacency from_metric(const FiniteMetricSpace& space);

  bool multicolor() const noexcept { return !colors.empty(); }
  std::span<const Vertex> row(Vertex v) const { return {targets.data() + offsets[v], targets.data() + offsets[v + 1]}; }
  bool preserved_by(std::span<const Vertex> images) const;
};

/// Ordered partition stored nauty-style: cells are contiguous ranges of
/// `elems`, identified by their start position. Positions are invariant under
/// relabelling, so they double as canonical cell names.
class OrderedPartition {
 public:
  OrderedPartition() = default;
  explicit OrderedPartition(std::size_t n);
  /// Cells ordered by ascending colour value.
  static OrderedPartition from_colors(std::span<const std::uint32_t> colors);

  std::size_t size() const noexcept { return elems.size(); }
  bool discrete() const noexcept { return cells == elems.size(); }
  std::uint32_t cell_end(std::uint32_t start) const { return end[start]; }

  /// Moves v to the front of its cell and splits it off; returns the start of
  /// the new singleton cell.
  std::uint32_t individualize(Vertex v);

  /// Start of the largest non-singleton cell (first by position), or size()
  /// when discrete.
  std::uint32_t target_cell() const;
  std::vector<std::uint32_t> cell_starts() const;

  std::vector<Vertex> elems;
  std::vector<std::uint32_t> pos;   // pos[v] = index of v in elems
  std::vector<std::uint32_t> cell;  // start of v's cell
  std::vector<std::uint32_t> end;   // end[start] = one past the cell
  std::size_t cells = 0;
};

/// Equitable refinement driven by a splitter queue. Only the fragments that
/// are not the largest piece of an unqueued cell are enqueued. The returned
/// trace hashes every split in processing order; equivalent nodes of the
/// search tree produce equal traces.
class Refiner {
 public:
  explicit Refiner(const ColoredAdjacency& adj);
  std::uint64_t refine(OrderedPartition& p, std::span<const std::uint32_t> splitters);

 private:
  void compute_keys(const OrderedPartition& p, std::uint32_t start, std::uint32_t stop);

  const ColoredAdjacency& adj_;
  std::vector<std::uint64_t> key_;
  std::vector<Vertex> touched_;
  std::vector<std::uint8_t> in_queue_;
  std::deque<std::uint32_t> queue_;
  std::vector<std::pair<Vertex, std::uint32_t>> pairs_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sequence_;  // (colour, count)
};

/// Individualization-refinement search for generators of the automorphism
/// group, following the first path and, level by level from the bottom,
/// looking for one automorphism per candidate not yet known to share an orbit
/// with the first-path choice.
AutomorphismSet search_automorphisms(const ColoredAdjacency& adj, std::uint64_t node_budget, std::string basis);

/// Colours by cell position after refining `initial` with every cell as a splitter.
std::vector<std::uint32_t> equitable_colors(const ColoredAdjacency& adj, std::span<const std::uint32_t> initial,
                                            std::size_t& class_count);

}  // namespace antipode::detail
