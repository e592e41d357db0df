#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antipode/permutation.hpp"
#include "antipode/rational.hpp"

namespace antipode {

/// A finite metric space with a probability measure on its points.
///
/// Distances are stored exactly as 64-bit numerators over one common
/// denominator, so graph metrics cost eight bytes per ordered pair and every
/// comparison between distances is an integer comparison.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const noexcept { return n_; }
  std::int64_t denominator() const noexcept { return denominator_; }

  /// distance(i, j) * denominator()
  std::int64_t scaled(std::size_t i, std::size_t j) const { return numerators_[i * n_ + j]; }
  std::span<const std::int64_t> row(std::size_t i) const { return {numerators_.data() + i * n_, n_}; }
  Rational distance(std::size_t i, std::size_t j) const;
  Rational from_scaled(std::int64_t numerator) const;

  const std::vector<Rational>& weights() const noexcept { return weights_; }
  bool uniform_weights() const noexcept { return uniform_; }

  /// Checks every axiom, including the O(n^3) triangle inequality.
  friend FiniteMetricSpace validate_metric(const std::vector<std::vector<Rational>>& matrix,
                                           std::optional<std::vector<Rational>> weights);

  /// Builds a uniformly weighted space from scaled integer distances.
  /// Diagonal, symmetry and positivity are checked here; the triangle
  /// inequality must already be certified by the caller (shortest-path
  /// Bellman equations, ultrametric construction). Pass
  /// `check_triangle = true` to re-verify it exhaustively.
  static FiniteMetricSpace from_certified(std::size_t n, std::int64_t denominator,
                                          std::vector<std::int64_t> numerators,
                                          bool check_triangle = false);

 private:
  void check_pairwise_axioms() const;
  void check_triangle_inequality() const;

  std::size_t n_ = 0;
  std::int64_t denominator_ = 1;
  std::vector<std::int64_t> numerators_;
  std::vector<Rational> weights_;
  bool uniform_ = true;
};

FiniteMetricSpace validate_metric(const std::vector<std::vector<Rational>>& matrix,
                                  std::optional<std::vector<Rational>> weights = std::nullopt);

Rational diameter(const FiniteMetricSpace& space);

enum class AverageMode { WithDiagonal, OffDiagonal };

/// WithDiagonal: A = sum m(x) m(y) d(x, y). OffDiagonal: A / mu, which for
/// uniform weights is the mean over ordered pairs of distinct points.
Rational average_distance(const FiniteMetricSpace& space, AverageMode mode = AverageMode::WithDiagonal);

struct DistributionEntry {
  Rational distance;
  Rational mass;
};

/// Push-forward of m x m under the metric, sorted by distance.
struct DistanceDistribution {
  std::vector<DistributionEntry> entries;
  Rational total_mass;

  Rational max_distance() const;
  Rational mass_at(const Rational& distance) const;
  /// Pr(d <= a)
  Rational cumulative(const Rational& a) const;
  /// Pr(d >= a)
  Rational tail(const Rational& a) const;
};

DistanceDistribution distance_distribution(const FiniteMetricSpace& space);

/// Builds a distribution from per-value pair counts over `pair_count`
/// equally weighted ordered pairs.
DistanceDistribution distribution_from_counts(std::span<const std::int64_t> scaled_values,
                                              std::span<const std::uint64_t> counts,
                                              std::int64_t denominator, const BigInt& pair_count);

struct BoundsReport {
  Rational diameter;                 // D
  Rational average;                  // A
  std::optional<Rational> average_off_diagonal;  // A-bar, needs mu > 0
  Rational mu;                       // 1 - (m x m)(diagonal)
  Rational expected_square;          // E[d^2]

  Rational lower_slack;              // A - D/2
  Rational upper_slack;              // mu D - A
  Rational square_lower_slack;       // E[d^2] - D^2/8
  Rational square_upper_slack;       // D^2 - E[d^2]

  bool lower_ok = false;
  bool upper_ok = false;
  bool square_lower_ok = false;
  bool square_upper_ok = false;
  bool lower_tight = false;          // A == D/2
  bool upper_tight = false;          // A == mu D
};

/// Evaluates D/2 <= A <= mu D and D^2/8 <= E[d^2] <= D^2 exactly. Violations
/// are reported through the flags, never thrown: the inequalities are only
/// theorems for homogeneous spaces.
BoundsReport check_bounds(const FiniteMetricSpace& space);
BoundsReport bounds_from_distribution(const DistanceDistribution& dist);

enum class AntipodalTier { NotAntipodal, Antipodal, UniquelyAntipodal, StrictlyAntipodal };
std::string_view tier_name(AntipodalTier tier) noexcept;

enum class HomogeneityEvidence {
  None,           // every point lacks an antipode, nothing to discharge
  Construction,   // generators known from the construction (left translations, ...)
  Orbits,         // orbit of x under a supplied automorphism set contains an antipode
};
std::string_view evidence_name(HomogeneityEvidence evidence) noexcept;

/// (x, y, O_x) with D != d(x, y) + d(y, O_x).
struct StrictnessWitness {
  Vertex x;
  Vertex y;
  Vertex antipode;
};

struct AntipodalityReport {
  AntipodalTier tier = AntipodalTier::NotAntipodal;
  Rational diameter;
  std::vector<std::vector<Vertex>> antipodes;   // ascending per point
  std::optional<Permutation> antipodal_map;     // uniquely antipodal only
  std::vector<StrictnessWitness> witnesses;     // first max_witnesses violations
  std::uint64_t witness_count = 0;              // all violations
  std::vector<Vertex> unmatched;                // points whose orbit holds no antipode
  HomogeneityEvidence evidence = HomogeneityEvidence::None;
  std::string evidence_basis;
  std::vector<std::string> warnings;
};

struct ClassifyOptions {
  std::size_t max_witnesses = 10000;
};

/// Places the space in the antipodal hierarchy. The isometry-to-antipode
/// requirement is discharged through `evidence` (generators must be
/// isometries of `space`, checked here); without evidence only
/// NotAntipodal can be concluded, anything else throws EvidenceRequired.
AntipodalityReport classify_antipodality(const FiniteMetricSpace& space,
                                         const AutomorphismSet* evidence = nullptr,
                                         ClassifyOptions options = {});

/// The map x -> unique antipode, checked to be a fixed-point-free involutive isometry.
Permutation antipodal_map(const FiniteMetricSpace& space);

struct InvolutionReport {
  bool is_involution = false;
  bool fixed_point_free = false;
  bool is_isometry = false;
  bool commutes_with_generators = false;
  bool even_cardinality = false;
  std::optional<std::size_t> non_commuting_generator;

  bool all() const noexcept {
    return is_involution && fixed_point_free && is_isometry && commutes_with_generators && even_cardinality;
  }
};

InvolutionReport verify_involution_properties(const Permutation& map, const FiniteMetricSpace& space,
                                              const AutomorphismSet& generators);

struct SymmetryReport {
  bool symmetric = false;
  std::optional<Rational> first_violation;  // smallest v with mass(v) != mass(D - v)
};

/// Pr(d <= a) == Pr(d >= D - a) for every a, checked as mass(v) == mass(D - v).
SymmetryReport symmetry_check(const DistanceDistribution& dist, const Rational& diameter);

struct UpperExtremal {
  bool extremal = false;
  Rational scale;
};

/// All off-diagonal distances equal (the common value is the scale) and the
/// weights uniform. A one-point space is extremal with scale 0.
UpperExtremal detect_extremal_upper(const FiniteMetricSpace& space);

struct LowerExtremal {
  bool extremal = false;     // strictly antipodal
  bool lower_tight = false;  // A == D/2
  AntipodalTier tier = AntipodalTier::NotAntipodal;
};

/// Strict antipodality, cross-checked against A == D/2. Throws
/// InconsistentWithBound if the two disagree on an input the evidence
/// certifies transitive with uniform weights.
LowerExtremal detect_extremal_lower(const FiniteMetricSpace& space, const AutomorphismSet& evidence);

/// Every generator preserves all distances.
bool generators_are_isometries(const FiniteMetricSpace& space, const AutomorphismSet& set);

}  // namespace antipode
