#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antipode/rational.hpp"

namespace antipode {

using Vertex = std::uint32_t;

/// A bijection of {0, ..., n-1} stored by images.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Error(BadParameter) unless `images` is a bijection.
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Vertex operator()(Vertex v) const { return images_[v]; }
  std::span<const Vertex> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  /// One-line image "p(0) p(1) ... p(n-1)".
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Vertex> images, Unchecked) : images_(std::move(images)) {}
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  std::vector<Vertex> images_;
};

/// Composition (a * b)(v) = a(b(v)).
Permutation operator*(const Permutation& a, const Permutation& b);

enum class AutomorphismOrigin {
  Construction,  // known generators of a structured family (translations, dihedral, ...)
  Search,        // produced by individualization-refinement search
};

struct SearchStatistics {
  std::uint64_t nodes = 0;
  bool truncated = false;
};

/// Generators of a group of automorphisms together with its orbit partition
/// and a Schreier forest: every vertex stores the generator word that reaches
/// it from the smallest vertex of its orbit.
class AutomorphismSet {
 public:
  AutomorphismSet() = default;
  AutomorphismSet(std::size_t degree, std::vector<Permutation> generators, AutomorphismOrigin origin,
                  std::string basis, SearchStatistics stats = {}, std::optional<BigInt> group_order = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  AutomorphismOrigin origin() const noexcept { return origin_; }
  const std::string& basis() const noexcept { return basis_; }
  const SearchStatistics& statistics() const noexcept { return stats_; }
  bool truncated() const noexcept { return stats_.truncated; }

  /// Orbits are known to be the orbits of the full automorphism group.
  bool complete() const noexcept { return origin_ == AutomorphismOrigin::Search && !stats_.truncated; }

  /// Order of the full automorphism group; only known after a complete search.
  const std::optional<BigInt>& group_order() const noexcept { return group_order_; }

  std::size_t orbit_count() const noexcept { return orbit_count_; }
  bool transitive() const noexcept { return degree_ > 0 && orbit_count_ == 1; }
  Vertex orbit_root(Vertex v) const { return root_[v]; }
  bool same_orbit(Vertex a, Vertex b) const { return root_[a] == root_[b]; }
  std::vector<std::vector<Vertex>> orbit_partition() const;

  /// Generator indices, applied first to last, taking orbit_root(v) to v.
  std::vector<std::size_t> word(Vertex v) const;
  /// Group element built from word(v).
  Permutation transversal(Vertex v) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  AutomorphismOrigin origin_ = AutomorphismOrigin::Search;
  std::string basis_;
  SearchStatistics stats_;
  std::optional<BigInt> group_order_;

  std::size_t orbit_count_ = 0;
  std::vector<Vertex> root_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> via_;
};

}  // namespace antipode
