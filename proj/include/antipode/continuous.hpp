#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "antipode/metric.hpp"
#include "antipode/permutation.hpp"
#include "antipode/rational.hpp"

namespace antipode {

/// Monte Carlo estimate of a mean with a normal-approximation 99% interval.
struct SampleEstimate {
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t count = 0;
  double standard_error = 0.0;
  double ci99_lo = 0.0;
  double ci99_hi = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t degenerate_draws = 0;  // zero-norm Gaussian vectors, redrawn
};

/// Samples are drawn in fixed-size blocks; block b uses a generator keyed by
/// (seed, b), so output is identical for any thread count.
inline constexpr std::uint64_t kSampleBlock = 1u << 16;

/// Great-circle distance between unit vectors, dot product clamped to [-1, 1].
double sphere_distance(std::span<const double> a, std::span<const double> b);

/// Quotient Euclidean distance on R^2 / Z^2.
double torus_distance(double ax, double ay, double bx, double by);

/// Mean great-circle distance between independent uniform points on S^d.
SampleEstimate sample_sphere_mean_distance(unsigned d, std::uint64_t samples, std::uint64_t seed);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  std::vector<double> masses() const;
  double bin_lo(std::size_t b) const;
  double bin_hi(std::size_t b) const;
};

/// Pearson-type comparison of bin b against its mirror bins-1-b. The statistic
/// sum (c_b - c_b')^2 / (c_b + c_b') over mirror pairs is chi-square with
/// bins/2 degrees of freedom under symmetry.
struct HistogramSymmetry {
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double critical_value = 0.0;  // 0.999 quantile
  double max_mass_gap = 0.0;    // max |p_b - p_b'|
  double scaled_gap = 0.0;      // max_mass_gap * sqrt(N)
  bool symmetric = false;
};

/// Goodness of fit of bin counts against expected bin probabilities.
struct GoodnessOfFit {
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double critical_value = 0.0;  // 0.999 quantile
  bool passed = false;
};

HistogramSymmetry histogram_symmetry(const Histogram& histogram);
GoodnessOfFit goodness_of_fit(const Histogram& histogram, std::span<const double> expected_masses);

struct SphereHistogram {
  SampleEstimate estimate;
  Histogram histogram;  // over [0, pi]
  HistogramSymmetry symmetry;
  std::optional<GoodnessOfFit> uniformity;  // d == 1 only
};

/// `bins` must be even and >= 2.
SphereHistogram sphere_distance_histogram(unsigned d, std::uint64_t samples, std::size_t bins,
                                          std::uint64_t seed);

struct TorusEstimate {
  SampleEstimate estimate;
  Histogram histogram;  // over [0, sqrt(2)/2]
  double diameter = 0.0;
  bool lower_ok = false;  // D/2 < mean - 4 se
  bool upper_ok = false;  // mean + 4 se < D
};

TorusEstimate flat_torus_mean_distance(std::uint64_t samples, std::uint64_t seed, std::size_t bins = 20);

/// Z / p^k with d(x, y) = p^-v(x - y).
struct PadicTruncation {
  std::uint64_t prime = 0;
  unsigned depth = 0;
  FiniteMetricSpace space;
  AutomorphismSet translations;  // x -> x + 1, transitive
};

inline constexpr std::uint64_t kPadicMatrixCap = 1u << 13;
inline constexpr std::uint64_t kPadicEnumerationCap = std::uint64_t{1} << 26;

bool is_prime(std::uint64_t p) noexcept;

/// d(x, z) <= max(d(x, y), d(y, z)) for every triple.
bool is_ultrametric(const FiniteMetricSpace& space);

/// p-adic valuation of x in Z / p^k, with v(0) = k.
unsigned padic_valuation(std::uint64_t x, std::uint64_t p, unsigned k) noexcept;

PadicTruncation padic_space(std::uint64_t p, unsigned k);

struct PadicAverage {
  Rational average;  // A_k, exact
  Rational limit;    // p / (p + 1)
  Rational gap;      // limit - A_k
};

/// A_k by enumerating Z / p^k against the base point 0 (translations are
/// isometries, so every row has the same average).
PadicAverage padic_average(std::uint64_t p, unsigned k);

}  // namespace antipode
