#include "antipode/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "antipode/error.hpp"
#include "antipode/parallel.hpp"

namespace antipode {

double sphere_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::BadDimension, "points live in different dimensions");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

double torus_distance(double ax, double ay, double bx, double by) {
  auto wrap = [](double delta) {
    delta = std::fabs(delta);
    delta -= std::floor(delta);
    return std::min(delta, 1.0 - delta);
  };
  return std::hypot(wrap(ax - bx), wrap(ay - by));
}

std::uint64_t Histogram::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::vector<double> Histogram::masses() const {
  const double n = static_cast<double>(total());
  std::vector<double> out(counts.size(), 0.0);
  if (n > 0)
    for (std::size_t b = 0; b < counts.size(); ++b) out[b] = static_cast<double>(counts[b]) / n;
  return out;
}

double Histogram::bin_lo(std::size_t b) const { return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(counts.size()); }
double Histogram::bin_hi(std::size_t b) const { return lo + (hi - lo) * static_cast<double>(b + 1) / static_cast<double>(counts.size()); }

namespace {

constexpr double kPi = std::numbers::pi;

// Stream tags keep the sphere and torus samplers on disjoint key spaces.
constexpr std::uint64_t kSphereStream = 0x5350484552455f31ULL;
constexpr std::uint64_t kTorusStream = 0x544f5255535f5f31ULL;

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

struct BlockStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t degenerate = 0;
  std::vector<std::uint64_t> bins;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
};

// Chan et al. pairwise combination, applied in block order.
void merge_into(BlockStats& acc, const BlockStats& b) {
  if (b.count == 0) return;
  const double na = static_cast<double>(acc.count), nb = static_cast<double>(b.count);
  const double delta = b.mean - acc.mean;
  const double total = na + nb;
  acc.mean += delta * nb / total;
  acc.m2 += b.m2 + delta * delta * na * nb / total;
  acc.count += b.count;
  acc.degenerate += b.degenerate;
  for (std::size_t i = 0; i < b.bins.size(); ++i) acc.bins[i] += b.bins[i];
}

template <typename DrawFn>
BlockStats run_blocks(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream, std::size_t bins, double hi,
                      DrawFn&& draw) {
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockStats> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    auto engine = block_engine(seed, b, stream);
    BlockStats& stats = partial[b];
    stats.bins.assign(bins, 0);
    const std::uint64_t begin = b * kSampleBlock;
    const std::uint64_t count = std::min<std::uint64_t>(kSampleBlock, samples - begin);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = draw(engine, stats.degenerate);
      stats.add(x);
      if (bins) {
        auto bin = static_cast<std::size_t>(x / hi * static_cast<double>(bins));
        stats.bins[std::min(bin, bins - 1)]++;
      }
    }
  });
  BlockStats total;
  total.bins.assign(bins, 0);
  for (const auto& p : partial) merge_into(total, p);
  return total;
}

SampleEstimate estimate_from(const BlockStats& stats, std::uint64_t seed) {
  SampleEstimate e;
  e.count = stats.count;
  e.mean = stats.mean;
  e.stddev = stats.count > 1 ? std::sqrt(stats.m2 / static_cast<double>(stats.count - 1)) : 0.0;
  e.standard_error = e.stddev / std::sqrt(static_cast<double>(stats.count));
  const double z = boost::math::quantile(boost::math::normal(), 0.995);
  e.ci99_lo = e.mean - z * e.standard_error;
  e.ci99_hi = e.mean + z * e.standard_error;
  e.seed = seed;
  e.degenerate_draws = stats.degenerate;
  return e;
}

void require_samples(std::uint64_t samples) {
  if (samples < 1000) throw Error(ErrorCode::BadParameter, "at least 1000 samples are required");
}

void draw_unit_vector(std::mt19937_64& engine, std::normal_distribution<double>& normal, std::vector<double>& v,
                      std::uint64_t& degenerate) {
  for (;;) {
    double norm2 = 0.0;
    for (auto& x : v) {
      x = normal(engine);
      norm2 += x * x;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& x : v) x *= inv;
      return;
    }
    ++degenerate;
  }
}

BlockStats sphere_blocks(unsigned d, std::uint64_t samples, std::uint64_t seed, std::size_t bins) {
  if (d < 1) throw Error(ErrorCode::BadDimension, "sphere dimension must be at least 1");
  require_samples(samples);
  return run_blocks(samples, seed, kSphereStream, bins, kPi, [d](std::mt19937_64& engine, std::uint64_t& degenerate) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(d + 1), b(d + 1);
    draw_unit_vector(engine, normal, a, degenerate);
    draw_unit_vector(engine, normal, b, degenerate);
    return sphere_distance(a, b);
  });
}

}  // namespace

SampleEstimate sample_sphere_mean_distance(unsigned d, std::uint64_t samples, std::uint64_t seed) {
  return estimate_from(sphere_blocks(d, samples, seed, 0), seed);
}

HistogramSymmetry histogram_symmetry(const Histogram& histogram) {
  HistogramSymmetry r;
  const std::size_t bins = histogram.counts.size();
  const auto masses = histogram.masses();
  for (std::size_t b = 0; b < bins / 2; ++b) {
    const std::size_t mirror = bins - 1 - b;
    const double cb = static_cast<double>(histogram.counts[b]);
    const double cm = static_cast<double>(histogram.counts[mirror]);
    r.max_mass_gap = std::max(r.max_mass_gap, std::fabs(masses[b] - masses[mirror]));
    if (cb + cm == 0.0) continue;
    r.chi_square += (cb - cm) * (cb - cm) / (cb + cm);
    ++r.degrees_of_freedom;
  }
  r.scaled_gap = r.max_mass_gap * std::sqrt(static_cast<double>(histogram.total()));
  if (r.degrees_of_freedom == 0) {
    r.symmetric = true;
    return r;
  }
  r.critical_value = boost::math::quantile(boost::math::chi_squared(static_cast<double>(r.degrees_of_freedom)), 0.999);
  r.symmetric = r.chi_square <= r.critical_value;
  return r;
}

GoodnessOfFit goodness_of_fit(const Histogram& histogram, std::span<const double> expected_masses) {
  if (expected_masses.size() != histogram.counts.size())
    throw Error(ErrorCode::DimensionMismatch, "expected masses and bins differ in count");
  GoodnessOfFit r;
  const double n = static_cast<double>(histogram.total());
  std::size_t used = 0;
  for (std::size_t b = 0; b < expected_masses.size(); ++b) {
    const double expected = n * expected_masses[b];
    if (expected <= 0.0) continue;
    const double diff = static_cast<double>(histogram.counts[b]) - expected;
    r.chi_square += diff * diff / expected;
    ++used;
  }
  if (used < 2) {
    r.passed = true;
    return r;
  }
  r.degrees_of_freedom = used - 1;
  r.critical_value = boost::math::quantile(boost::math::chi_squared(static_cast<double>(r.degrees_of_freedom)), 0.999);
  r.passed = r.chi_square <= r.critical_value;
  return r;
}

SphereHistogram sphere_distance_histogram(unsigned d, std::uint64_t samples, std::size_t bins, std::uint64_t seed) {
  if (bins < 2 || bins % 2 != 0) throw Error(ErrorCode::BadParameter, "bin count must be even and at least 2");
  const BlockStats stats = sphere_blocks(d, samples, seed, bins);
  SphereHistogram out;
  out.estimate = estimate_from(stats, seed);
  out.histogram = Histogram{0.0, kPi, stats.bins};
  out.symmetry = histogram_symmetry(out.histogram);
  if (d == 1) {
    const std::vector<double> uniform(bins, 1.0 / static_cast<double>(bins));
    out.uniformity = goodness_of_fit(out.histogram, uniform);
  }
  return out;
}

TorusEstimate flat_torus_mean_distance(std::uint64_t samples, std::uint64_t seed, std::size_t bins) {
  require_samples(samples);
  if (bins < 1) throw Error(ErrorCode::BadParameter, "bin count must be positive");
  const double diameter = std::sqrt(2.0) / 2.0;
  const BlockStats stats =
      run_blocks(samples, seed, kTorusStream, bins, diameter, [](std::mt19937_64& engine, std::uint64_t&) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double ax = unit(engine), ay = unit(engine), bx = unit(engine), by = unit(engine);
        return torus_distance(ax, ay, bx, by);
      });
  TorusEstimate out;
  out.estimate = estimate_from(stats, seed);
  out.histogram = Histogram{0.0, diameter, stats.bins};
  out.diameter = diameter;
  out.lower_ok = out.estimate.mean - 4.0 * out.estimate.standard_error > diameter / 2.0;
  out.upper_ok = out.estimate.mean + 4.0 * out.estimate.standard_error < diameter;
  return out;
}

bool is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q <= p / q; ++q)
    if (p % q == 0) return false;
  return true;
}

bool is_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto rx = space.row(x);
    for (std::size_t z = 0; z < n; ++z) {
      const auto rz = space.row(z);
      for (std::size_t y = 0; y < n; ++y)
        if (rx[z] > std::max(rx[y], rz[y])) return false;
    }
  }
  return true;
}

unsigned padic_valuation(std::uint64_t x, std::uint64_t p, unsigned k) noexcept {
  if (x == 0) return k;
  unsigned v = 0;
  while (v < k && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

namespace {

std::uint64_t checked_power(std::uint64_t p, unsigned k, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n > cap / p) throw Error(ErrorCode::TooLarge, "p^k exceeds the cap of " + std::to_string(cap));
    n *= p;
  }
  return n;
}

void check_padic_parameters(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::BadParameter, "depth must be at least 1");
}

}  // namespace

PadicTruncation padic_space(std::uint64_t p, unsigned k) {
  check_padic_parameters(p, k);
  const std::uint64_t n = checked_power(p, k, kPadicMatrixCap);
  std::vector<std::int64_t> scale(k + 1, 0);  // p^(k-1-v) for v < k, 0 for v = k
  {
    std::int64_t value = 1;
    for (unsigned v = k; v-- > 0;) {
      scale[v] = value;
      value *= static_cast<std::int64_t>(p);
    }
  }
  const auto denominator = scale[0];
  std::vector<std::int64_t> matrix(n * n);
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) matrix[x * n + y] = scale[padic_valuation((x + n - y) % n, p, k)];

  PadicTruncation out;
  out.prime = p;
  out.depth = k;
  out.space = FiniteMetricSpace::from_certified(n, denominator, std::move(matrix), n <= 512);
  std::vector<Vertex> shift(n);
  for (std::uint64_t x = 0; x < n; ++x) shift[x] = static_cast<Vertex>((x + 1) % n);
  out.translations = AutomorphismSet(n, {Permutation(std::move(shift))}, AutomorphismOrigin::Construction,
                                     "translations of Z/" + std::to_string(p) + "^" + std::to_string(k));
  return out;
}

PadicAverage padic_average(std::uint64_t p, unsigned k) {
  check_padic_parameters(p, k);
  const std::uint64_t n = checked_power(p, k, kPadicEnumerationCap);
  // shell sizes: how many y in Z/p^k have valuation v
  std::vector<std::uint64_t> shell(k + 1, 0);
  for (std::uint64_t y = 0; y < n; ++y) ++shell[padic_valuation(y, p, k)];

  BigInt weighted = 0;
  BigInt power = 1;  // p^(k-1-v), starting from v = k-1
  for (unsigned v = k; v-- > 0;) {
    weighted += BigInt(shell[v]) * power;
    power *= p;
  }
  // power is now p^k; distances are over the denominator p^(k-1)
  const BigInt denominator = power / p;
  PadicAverage out;
  out.average = Rational(weighted, BigInt(n) * denominator);
  out.limit = Rational(BigInt(p), BigInt(p + 1));
  out.gap = out.limit - out.average;
  return out;
}

}  // namespace antipode
