#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace geonet {

// Geometry of two unit disks whose centers are x apart, 0 <= x <= 2.
// Both throw DomainError outside that range.
double lens_area(double x);  // intersection area
double m_area(double x);     // area of one disk outside the other: pi - lens_area(x)

// 2x * m_area(x) / pi: density of the neighbor distance times the expected
// fraction of v's neighbors that a neighbor at distance x cannot reach.
double sigma_integrand(double x);

// Expected fraction of nonadjacent neighbor pairs of a node whose disk lies
// inside the region: the integral of sigma_integrand over [0, 1], by
// adaptive Gauss-Kronrod quadrature. Throws NumericalError when the error
// estimate exceeds `tolerance`.
double sigma_interior(double tolerance = 1e-10);

// Histogram of st(v) over [0, 1] for a node at boundary distance s from a
// straight boundary, with mu expected neighbors in an unclipped disk.
struct StDistribution {
  double boundary_distance = 0.0;
  double expected_neighbors = 0.0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> counts;
  // Samples with st exactly 0; also counted in counts[0].
  std::uint64_t zero_count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one sample

  std::size_t bin_count() const { return counts.size(); }
  double bin_width() const { return 1.0 / static_cast<double>(counts.size()); }
  double bin_low(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(counts.size());
  }
  double bin_high(std::size_t i) const { return bin_low(i + 1); }

  // Fraction of samples with st <= t. The zero atom is exact; mass inside a
  // bin is treated as uniform.
  double mass_at_or_below(double t) const;
};

struct StSamplingOptions {
  std::size_t bins = 100;
  // Each batch draws from its own sub-stream of the master seed; batches are
  // merged in index order.
  std::size_t batch_size = 1024;
  std::size_t workers = 0;
};

// Monte-Carlo: neighbor count N ~ Poisson(mu * Ar(C(v)) / pi), neighbors
// uniform in the clipped unit disk C(v), st = fraction of neighbor pairs
// farther apart than 1; st = 0 when N <= 1.
StDistribution sample_st(double s, double mu, std::uint64_t samples, std::uint64_t seed,
                         const StSamplingOptions& options = {});

struct ThresholdErrorReport {
  double threshold = 0.0;
  double false_negative_rate = 0.0;  // boundary mass with st > threshold
  double false_positive_rate = 0.0;  // interior mass with st <= threshold

  double total() const { return false_negative_rate + false_positive_rate; }
};

// Throws Incompatible on differing binning and DomainError for a threshold
// outside [0, 1].
ThresholdErrorReport estimate_errors(const StDistribution& boundary,
                                     const StDistribution& interior, double threshold);

// "bin_low,bin_high,count" rows.
void write_distribution_csv(std::ostream& out, const StDistribution& dist);

// One JSON object on a single line: s, mu, samples, bins, mean, stddev,
// zero_count.
void write_distribution_sidecar(std::ostream& out, const StDistribution& dist);

}  // namespace geonet
