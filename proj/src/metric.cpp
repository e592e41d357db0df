#include "antipode/metric.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "antipode/error.hpp"
#include "antipode/parallel.hpp"

namespace antipode {

namespace {

// Keeps x + y representable for any two stored numerators.
constexpr std::int64_t kMaxNumerator = std::int64_t{1} << 61;

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::int64_t to_int64_checked(const BigInt& value, const char* what) {
  if (value > kMaxNumerator || value < -kMaxNumerator)
    throw Error(ErrorCode::TooLarge, std::string(what) + " exceeds the 64-bit exact representation");
  return static_cast<std::int64_t>(value);
}

}  // namespace

Rational FiniteMetricSpace::distance(std::size_t i, std::size_t j) const { return from_scaled(scaled(i, j)); }

Rational FiniteMetricSpace::from_scaled(std::int64_t numerator) const {
  return Rational(BigInt(numerator), BigInt(denominator_));
}

void FiniteMetricSpace::check_pairwise_axioms() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (scaled(i, i) != 0) throw Error(ErrorCode::NonzeroDiagonal, "nonzero diagonal entry at " + std::to_string(i), {i});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (scaled(i, j) < 0) throw Error(ErrorCode::NegativeDistance, "negative distance at " + pair_text(i, j), {i, j});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (scaled(i, j) != scaled(j, i)) throw Error(ErrorCode::Asymmetric, "asymmetric entry at " + pair_text(i, j), {i, j});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (scaled(i, j) == 0)
        throw Error(ErrorCode::ZeroDistance, "distinct points at distance 0 at " + pair_text(i, j), {i, j});
}

void FiniteMetricSpace::check_triangle_inequality() const {
  // First witness (x, z, y) with d(x, z) > d(x, y) + d(y, z), in lexicographic
  // order of x, then z > x, then y.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> first(n_, {kNone, kNone});
  parallel_for(n_, [&](std::size_t x) {
    const auto rx = row(x);
    for (std::size_t z = x + 1; z < n_; ++z) {
      const auto rz = row(z);
      const std::int64_t direct = rx[z];
      for (std::size_t y = 0; y < n_; ++y) {
        if (direct > rx[y] + rz[y]) {
          first[x] = {z, y};
          return;
        }
      }
    }
  });
  for (std::size_t x = 0; x < n_; ++x) {
    if (first[x].first == kNone) continue;
    const auto [z, y] = first[x];
    throw Error(ErrorCode::TriangleViolation,
                "triangle inequality fails: d(" + std::to_string(x) + "," + std::to_string(z) + ") > d(" +
                    std::to_string(x) + "," + std::to_string(y) + ") + d(" + std::to_string(y) + "," +
                    std::to_string(z) + ")",
                {x, z, y});
  }
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<Rational>>& matrix,
                                  std::optional<std::vector<Rational>> weights) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i)
    if (matrix[i].size() != n)
      throw Error(ErrorCode::ShapeMismatch, "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                                                " entries, expected " + std::to_string(n), {i});

  BigInt common = 1;
  for (const auto& row : matrix)
    for (const auto& value : row) common = boost::multiprecision::lcm(common, denominator(value));
  const std::int64_t den = to_int64_checked(common, "common denominator");

  FiniteMetricSpace space;
  space.n_ = n;
  space.denominator_ = den;
  space.numerators_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& value = matrix[i][j];
      const BigInt scaled_value = numerator(value) * (common / denominator(value));
      space.numerators_[i * n + j] = to_int64_checked(scaled_value, "distance");
    }
  space.check_pairwise_axioms();

  if (weights) {
    if (weights->size() != n)
      throw Error(ErrorCode::BadWeights, "expected " + std::to_string(n) + " weights, got " + std::to_string(weights->size()));
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((*weights)[i] <= 0) throw Error(ErrorCode::BadWeights, "weight " + std::to_string(i) + " is not positive", {i});
      sum += (*weights)[i];
    }
    if (sum != 1) throw Error(ErrorCode::BadWeights, "weights sum to " + to_exact_string(sum) + ", not 1");
    space.weights_ = std::move(*weights);
    space.uniform_ = std::all_of(space.weights_.begin(), space.weights_.end(),
                                 [&](const Rational& w) { return w == space.weights_.front(); });
  } else {
    space.weights_.assign(n, n ? Rational(1, static_cast<long long>(n)) : Rational(0));
    space.uniform_ = true;
  }

  space.check_triangle_inequality();
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_certified(std::size_t n, std::int64_t denominator,
                                                    std::vector<std::int64_t> numerators, bool check_triangle) {
  if (numerators.size() != n * n) throw Error(ErrorCode::ShapeMismatch, "distance buffer is not n x n");
  if (denominator <= 0) throw Error(ErrorCode::BadParameter, "denominator must be positive");
  for (std::int64_t v : numerators)
    if (v > kMaxNumerator) throw Error(ErrorCode::TooLarge, "distance exceeds the 64-bit exact representation");
  FiniteMetricSpace space;
  space.n_ = n;
  space.denominator_ = denominator;
  space.numerators_ = std::move(numerators);
  space.weights_.assign(n, n ? Rational(1, static_cast<long long>(n)) : Rational(0));
  space.uniform_ = true;
  space.check_pairwise_axioms();
  if (check_triangle) space.check_triangle_inequality();
  return space;
}

Rational diameter(const FiniteMetricSpace& space) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto r = space.row(i);
    best = std::max(best, *std::max_element(r.begin(), r.end()));
  }
  return space.from_scaled(best);
}

namespace {

Rational diagonal_mass(const FiniteMetricSpace& space) {
  Rational total = 0;
  for (const auto& w : space.weights()) total += w * w;
  return total;
}

}  // namespace

Rational average_distance(const FiniteMetricSpace& space, AverageMode mode) {
  const std::size_t n = space.size();
  if (mode == AverageMode::OffDiagonal && n < 2)
    throw Error(ErrorCode::OffDiagonalUndefined, "off-diagonal average needs at least two points");
  if (n == 0) return 0;

  Rational with_diagonal;
  if (space.uniform_weights()) {
    BigInt total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      __int128 row_sum = 0;
      for (std::int64_t v : space.row(i)) row_sum += v;
      total += BigInt(static_cast<std::int64_t>(row_sum >> 64)) * (BigInt(1) << 64) +
               BigInt(static_cast<std::uint64_t>(row_sum & ~std::uint64_t{0}));
    }
    with_diagonal = Rational(total, BigInt(n) * n * space.denominator());
  } else {
    const auto& w = space.weights();
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational row_sum = 0;
      const auto r = space.row(i);
      for (std::size_t j = 0; j < n; ++j)
        if (r[j] != 0) row_sum += w[j] * r[j];
      total += w[i] * row_sum;
    }
    with_diagonal = total / space.denominator();
  }
  if (mode == AverageMode::WithDiagonal) return with_diagonal;
  return with_diagonal / (1 - diagonal_mass(space));
}

Rational DistanceDistribution::max_distance() const {
  return entries.empty() ? Rational(0) : entries.back().distance;
}

Rational DistanceDistribution::mass_at(const Rational& distance) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), distance,
                             [](const DistributionEntry& e, const Rational& d) { return e.distance < d; });
  return (it != entries.end() && it->distance == distance) ? it->mass : Rational(0);
}

Rational DistanceDistribution::cumulative(const Rational& a) const {
  Rational total = 0;
  for (const auto& e : entries)
    if (e.distance <= a) total += e.mass;
  return total;
}

Rational DistanceDistribution::tail(const Rational& a) const {
  Rational total = 0;
  for (const auto& e : entries)
    if (e.distance >= a) total += e.mass;
  return total;
}

DistanceDistribution distribution_from_counts(std::span<const std::int64_t> scaled_values,
                                              std::span<const std::uint64_t> counts, std::int64_t denominator,
                                              const BigInt& pair_count) {
  if (scaled_values.size() != counts.size()) throw Error(ErrorCode::ShapeMismatch, "values and counts differ in length");
  std::vector<std::size_t> order(scaled_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scaled_values[a] < scaled_values[b]; });
  DistanceDistribution dist;
  dist.total_mass = 0;
  for (std::size_t i : order) {
    if (counts[i] == 0) continue;
    DistributionEntry e{Rational(BigInt(scaled_values[i]), BigInt(denominator)), Rational(BigInt(counts[i]), pair_count)};
    dist.total_mass += e.mass;
    if (!dist.entries.empty() && dist.entries.back().distance == e.distance)
      dist.entries.back().mass += e.mass;
    else
      dist.entries.push_back(std::move(e));
  }
  return dist;
}

DistanceDistribution distance_distribution(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n == 0) return {};
  if (space.uniform_weights()) {
    std::int64_t max_value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = space.row(i);
      max_value = std::max(max_value, *std::max_element(r.begin(), r.end()));
    }
    std::vector<std::int64_t> values;
    std::vector<std::uint64_t> counts;
    if (max_value <= (std::int64_t{1} << 22)) {
      std::vector<std::uint64_t> dense(static_cast<std::size_t>(max_value) + 1, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t v : space.row(i)) ++dense[static_cast<std::size_t>(v)];
      for (std::size_t v = 0; v < dense.size(); ++v)
        if (dense[v]) {
          values.push_back(static_cast<std::int64_t>(v));
          counts.push_back(dense[v]);
        }
    } else {
      std::map<std::int64_t, std::uint64_t> sparse;
      for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t v : space.row(i)) ++sparse[v];
      for (const auto& [v, c] : sparse) {
        values.push_back(v);
        counts.push_back(c);
      }
    }
    return distribution_from_counts(values, counts, space.denominator(), BigInt(n) * n);
  }

  std::map<std::int64_t, Rational> masses;
  const auto& w = space.weights();
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = space.row(i);
    for (std::size_t j = 0; j < n; ++j) masses[r[j]] += w[i] * w[j];
  }
  DistanceDistribution dist;
  dist.total_mass = 0;
  for (auto& [v, m] : masses) {
    dist.total_mass += m;
    dist.entries.push_back({space.from_scaled(v), std::move(m)});
  }
  return dist;
}

BoundsReport bounds_from_distribution(const DistanceDistribution& dist) {
  BoundsReport r;
  r.diameter = dist.max_distance();
  r.average = 0;
  r.expected_square = 0;
  for (const auto& e : dist.entries) {
    r.average += e.distance * e.mass;
    r.expected_square += e.distance * e.distance * e.mass;
  }
  r.mu = dist.entries.empty() ? Rational(0) : Rational(1 - dist.mass_at(0));
  if (r.mu > 0) r.average_off_diagonal = r.average / r.mu;

  const Rational& D = r.diameter;
  r.lower_slack = r.average - D / 2;
  r.upper_slack = r.mu * D - r.average;
  r.square_lower_slack = r.expected_square - D * D / 8;
  r.square_upper_slack = D * D - r.expected_square;
  r.lower_ok = r.lower_slack >= 0;
  r.upper_ok = r.upper_slack >= 0;
  r.square_lower_ok = r.square_lower_slack >= 0;
  r.square_upper_ok = r.square_upper_slack >= 0;
  r.lower_tight = r.lower_slack == 0;
  r.upper_tight = r.upper_slack == 0;
  return r;
}

BoundsReport check_bounds(const FiniteMetricSpace& space) {
  return bounds_from_distribution(distance_distribution(space));
}

std::string_view tier_name(AntipodalTier tier) noexcept {
  switch (tier) {
    case AntipodalTier::NotAntipodal: return "NOT_ANTIPODAL";
    case AntipodalTier::Antipodal: return "ANTIPODAL";
    case AntipodalTier::UniquelyAntipodal: return "UNIQUELY_ANTIPODAL";
    case AntipodalTier::StrictlyAntipodal: return "STRICTLY_ANTIPODAL";
  }
  return "UNKNOWN";
}

std::string_view evidence_name(HomogeneityEvidence evidence) noexcept {
  switch (evidence) {
    case HomogeneityEvidence::None: return "none";
    case HomogeneityEvidence::Construction: return "construction";
    case HomogeneityEvidence::Orbits: return "automorphism-orbits";
  }
  return "unknown";
}

bool generators_are_isometries(const FiniteMetricSpace& space, const AutomorphismSet& set) {
  const std::size_t n = space.size();
  if (set.degree() != n) return false;
  for (const auto& g : set.generators()) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto src = space.row(i);
      const auto dst = space.row(g(static_cast<Vertex>(i)));
      for (std::size_t j = 0; j < n; ++j)
        if (dst[g(static_cast<Vertex>(j))] != src[j]) return false;
    }
  }
  return true;
}

namespace {

std::int64_t max_scaled(const FiniteMetricSpace& space) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto r = space.row(i);
    best = std::max(best, *std::max_element(r.begin(), r.end()));
  }
  return best;
}

std::vector<std::vector<Vertex>> antipode_sets(const FiniteMetricSpace& space, std::int64_t diam) {
  std::vector<std::vector<Vertex>> sets(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto r = space.row(x);
    for (std::size_t y = 0; y < r.size(); ++y)
      if (r[y] == diam) sets[x].push_back(static_cast<Vertex>(y));
  }
  return sets;
}

}  // namespace

AntipodalityReport classify_antipodality(const FiniteMetricSpace& space, const AutomorphismSet* evidence,
                                         ClassifyOptions options) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorCode::BadParameter, "antipodality needs at least two points");
  if (evidence) {
    if (evidence->degree() != n)
      throw Error(ErrorCode::DimensionMismatch, "evidence acts on " + std::to_string(evidence->degree()) +
                                                    " points, space has " + std::to_string(n));
    if (!generators_are_isometries(space, *evidence))
      throw Error(ErrorCode::InvalidEvidence, "a supplied generator is not an isometry of the space");
  }

  AntipodalityReport report;
  const std::int64_t diam = max_scaled(space);
  report.diameter = space.from_scaled(diam);
  report.antipodes = antipode_sets(space, diam);
  if (!space.uniform_weights())
    report.warnings.push_back("non-uniform weights: the bounds are theorems only for isometry-invariant measures");

  // n >= 2 and distinct points are at positive distance, so every point has
  // an antipode other than itself or none at all.
  for (const auto& set : report.antipodes)
    if (set.empty()) {
      report.tier = AntipodalTier::NotAntipodal;
      if (evidence) {
        report.evidence = evidence->origin() == AutomorphismOrigin::Construction ? HomogeneityEvidence::Construction
                                                                                   : HomogeneityEvidence::Orbits;
        report.evidence_basis = evidence->basis();
      }
      return report;
    }

  if (!evidence)
    throw Error(ErrorCode::EvidenceRequired,
                "every point has an antipode; an isometry taking each point to an antipode must be evidenced");
  report.evidence = evidence->origin() == AutomorphismOrigin::Construction ? HomogeneityEvidence::Construction
                                                                             : HomogeneityEvidence::Orbits;
  report.evidence_basis = evidence->basis();

  for (std::size_t x = 0; x < n; ++x) {
    const auto& set = report.antipodes[x];
    const bool matched = std::any_of(set.begin(), set.end(),
                                     [&](Vertex y) { return evidence->same_orbit(static_cast<Vertex>(x), y); });
    if (!matched) report.unmatched.push_back(static_cast<Vertex>(x));
  }
  if (!report.unmatched.empty()) {
    if (!evidence->complete())
      throw Error(ErrorCode::EvidenceRequired,
                  "automorphism evidence is partial and reaches no antipode of point " +
                      std::to_string(report.unmatched.front()),
                  {report.unmatched.front()});
    report.tier = AntipodalTier::NotAntipodal;
    return report;
  }
  report.tier = AntipodalTier::Antipodal;

  if (!std::all_of(report.antipodes.begin(), report.antipodes.end(), [](const auto& s) { return s.size() == 1; }))
    return report;
  std::vector<Vertex> images(n);
  for (std::size_t x = 0; x < n; ++x) images[x] = report.antipodes[x].front();
  report.antipodal_map = Permutation(std::move(images));
  report.tier = AntipodalTier::UniquelyAntipodal;

  const Permutation& map = *report.antipodal_map;
  for (std::size_t x = 0; x < n; ++x) {
    const auto rx = space.row(x);
    const Vertex ox = map(static_cast<Vertex>(x));
    const auto rox = space.row(ox);
    for (std::size_t y = 0; y < n; ++y) {
      if (rx[y] + rox[y] == diam) continue;
      if (report.witnesses.size() < options.max_witnesses)
        report.witnesses.push_back({static_cast<Vertex>(x), static_cast<Vertex>(y), ox});
      ++report.witness_count;
    }
  }
  if (report.witness_count == 0) report.tier = AntipodalTier::StrictlyAntipodal;
  return report;
}

Permutation antipodal_map(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorCode::BadParameter, "antipodal map needs at least two points");
  const std::int64_t diam = max_scaled(space);
  const auto sets = antipode_sets(space, diam);
  std::vector<Vertex> images(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (sets[x].size() != 1)
      throw Error(ErrorCode::NotUniquelyAntipodal,
                  "point " + std::to_string(x) + " has " + std::to_string(sets[x].size()) + " antipodes", {x});
    images[x] = sets[x].front();
  }
  Permutation map(std::move(images));
  for (std::size_t x = 0; x < n; ++x) {
    const auto rx = space.row(x);
    const auto rox = space.row(map(static_cast<Vertex>(x)));
    for (std::size_t y = 0; y < n; ++y)
      if (rox[map(static_cast<Vertex>(y))] != rx[y])
        throw Error(ErrorCode::NotIsometry, "antipodal map changes the distance of " + pair_text(x, y), {x, y});
  }
  return map;
}

InvolutionReport verify_involution_properties(const Permutation& map, const FiniteMetricSpace& space,
                                              const AutomorphismSet& generators) {
  const std::size_t n = space.size();
  if (map.size() != n || generators.degree() != n)
    throw Error(ErrorCode::DimensionMismatch, "map, space and generators must act on the same points");
  InvolutionReport r;
  r.is_involution = (map * map).is_identity();
  r.fixed_point_free = true;
  for (Vertex v = 0; v < n; ++v)
    if (map(v) == v) r.fixed_point_free = false;
  r.is_isometry = true;
  for (std::size_t x = 0; x < n && r.is_isometry; ++x) {
    const auto rx = space.row(x);
    const auto rox = space.row(map(static_cast<Vertex>(x)));
    for (std::size_t y = 0; y < n; ++y)
      if (rox[map(static_cast<Vertex>(y))] != rx[y]) {
        r.is_isometry = false;
        break;
      }
  }
  r.commutes_with_generators = true;
  for (std::size_t gi = 0; gi < generators.generators().size(); ++gi) {
    const auto& g = generators.generators()[gi];
    for (Vertex v = 0; v < n; ++v)
      if (g(map(v)) != map(g(v))) {
        r.commutes_with_generators = false;
        r.non_commuting_generator = gi;
        break;
      }
    if (!r.commutes_with_generators) break;
  }
  r.even_cardinality = n % 2 == 0;
  return r;
}

SymmetryReport symmetry_check(const DistanceDistribution& dist, const Rational& diam) {
  SymmetryReport r;
  r.symmetric = true;
  for (const auto& e : dist.entries) {
    if (e.mass != dist.mass_at(diam - e.distance)) {
      r.symmetric = false;
      r.first_violation = e.distance;
      break;
    }
  }
  return r;
}

UpperExtremal detect_extremal_upper(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n <= 1) return {true, Rational(0)};
  const std::int64_t common = space.scaled(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = space.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && r[j] != common) return {false, Rational(0)};
  }
  if (!space.uniform_weights()) return {false, Rational(0)};
  return {true, space.from_scaled(common)};
}

LowerExtremal detect_extremal_lower(const FiniteMetricSpace& space, const AutomorphismSet& evidence) {
  LowerExtremal r;
  const auto report = classify_antipodality(space, &evidence);
  r.tier = report.tier;
  r.extremal = report.tier == AntipodalTier::StrictlyAntipodal;
  r.lower_tight = check_bounds(space).lower_tight;
  if (evidence.transitive() && space.uniform_weights() && r.extremal != r.lower_tight)
    throw Error(ErrorCode::InconsistentWithBound,
                std::string("strict antipodality is ") + (r.extremal ? "present" : "absent") +
                    " but A == D/2 is " + (r.lower_tight ? "true" : "false") + " on a transitive space");
  return r;
}

}  // namespace antipode
