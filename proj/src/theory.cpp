#include "geonet/theory.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <random>

#include "geonet/error.hpp"
#include "geonet/geometry.hpp"
#include "geonet/parallel.hpp"
#include "geonet/rng.hpp"
#include "geonet/text_io.hpp"

namespace geonet {

double lens_area(double x) {
  if (!(x >= 0.0 && x <= 2.0)) throw DomainError("disk distance must lie in [0, 2]");
  const double a = std::acos(x / 2.0);
  return 2.0 * (a - 0.5 * std::sin(2.0 * a));
}

double m_area(double x) { return std::numbers::pi - lens_area(x); }

double sigma_integrand(double x) { return 2.0 * x * m_area(x) / std::numbers::pi; }

double sigma_interior(double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value =
      gauss_kronrod<double, 15>::integrate(sigma_integrand, 0.0, 1.0, 15, 1e-14, &error);
  if (!std::isfinite(value) || !(error <= tolerance))
    throw NumericalError("quadrature did not converge (error estimate " +
                         format_real(error, 3) + ")");
  return value;
}

double StDistribution::mass_at_or_below(double t) const {
  if (samples == 0) return 0.0;
  if (t < 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const std::size_t bins = counts.size();
  const std::size_t idx = std::min(static_cast<std::size_t>(t * static_cast<double>(bins)),
                                   bins - 1);
  double mass = 0.0;
  for (std::size_t i = 0; i < idx; ++i) mass += static_cast<double>(counts[i]);
  const double frac = std::clamp((t - bin_low(idx)) / bin_width(), 0.0, 1.0);
  if (idx == 0) {
    mass += static_cast<double>(zero_count) +
            static_cast<double>(counts[0] - zero_count) * frac;
  } else {
    mass += static_cast<double>(counts[idx]) * frac;
  }
  return mass / static_cast<double>(samples);
}

namespace {

struct BatchTally {
  std::vector<std::uint64_t> counts;
  std::uint64_t zeros = 0;
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean

  void add(double value) {
    ++n;
    const double d = value - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (value - mean);
  }

  // Chan et al. pairwise merge.
  void merge(const BatchTally& o) {
    if (o.n == 0) return;
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    zeros += o.zeros;
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double total = na + nb;
    mean += d * nb / total;
    m2 += o.m2 + d * d * na * nb / total;
    n += o.n;
  }
};

// Fraction of pairs at distance > 1. Squared distances avoid the sqrt.
double nonadjacent_fraction(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n <= 1) return 0.0;
  std::uint64_t far = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = xs[i], yi = ys[i];
    std::uint64_t row = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xs[j] - xi;
      const double dy = ys[j] - yi;
      row += (dx * dx + dy * dy > 1.0) ? 1 : 0;
    }
    far += row;
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(far) / pairs;
}

}  // namespace

StDistribution sample_st(double s, double mu, std::uint64_t samples, std::uint64_t seed,
                         const StSamplingOptions& options) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("boundary distance must be >= 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("expected neighbors must be > 0");
  if (samples == 0) throw DomainError("need at least one sample");
  if (options.bins == 0 || options.batch_size == 0) throw DomainError("invalid sampling options");

  const double clipped = clipped_disk_area(DiskGeometry(1.0, s));
  const double neighbor_mean = mu * clipped / std::numbers::pi;
  const double y_floor = -std::min(s, 1.0);
  const std::size_t bins = options.bins;

  const std::uint64_t batch_count = (samples + options.batch_size - 1) / options.batch_size;
  std::vector<BatchTally> tallies(batch_count);

  run_batches(batch_count, options.workers, [&](std::size_t b) {
    BatchTally tally;
    tally.counts.assign(bins, 0);
    Rng rng(derive_seed(seed, b));
    std::poisson_distribution<std::uint64_t> poisson(neighbor_mean);
    std::vector<double> xs, ys;
    const std::uint64_t begin = b * options.batch_size;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + options.batch_size);
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t count = poisson(rng);
      xs.clear();
      ys.clear();
      while (xs.size() < count) {
        const double x = uniform(rng, -1.0, 1.0);
        const double y = uniform(rng, y_floor, 1.0);
        if (x * x + y * y <= 1.0) {
          xs.push_back(x);
          ys.push_back(y);
        }
      }
      const double st = nonadjacent_fraction(xs, ys);
      const auto bin = std::min(static_cast<std::size_t>(st * static_cast<double>(bins)), bins - 1);
      ++tally.counts[bin];
      if (st == 0.0) ++tally.zeros;
      tally.add(st);
    }
    tallies[b] = std::move(tally);
  });

  BatchTally total;
  total.counts.assign(bins, 0);
  for (const BatchTally& t : tallies) total.merge(t);

  StDistribution dist;
  dist.boundary_distance = s;
  dist.expected_neighbors = mu;
  dist.samples = samples;
  dist.counts = std::move(total.counts);
  dist.zero_count = total.zeros;
  dist.mean = total.mean;
  dist.stddev = samples > 1 ? std::sqrt(total.m2 / static_cast<double>(samples - 1)) : 0.0;
  return dist;
}

ThresholdErrorReport estimate_errors(const StDistribution& boundary,
                                     const StDistribution& interior, double threshold) {
  if (boundary.bin_count() != interior.bin_count() || boundary.bin_count() == 0)
    throw Incompatible("distributions use different binnings");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in [0, 1]");
  ThresholdErrorReport report;
  report.threshold = threshold;
  report.false_negative_rate = 1.0 - boundary.mass_at_or_below(threshold);
  report.false_positive_rate = interior.mass_at_or_below(threshold);
  return report;
}

void write_distribution_csv(std::ostream& out, const StDistribution& dist) {
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < dist.bin_count(); ++i) {
    out << format_real(dist.bin_low(i)) << ',' << format_real(dist.bin_high(i)) << ','
        << dist.counts[i] << '\n';
  }
}

void write_distribution_sidecar(std::ostream& out, const StDistribution& dist) {
  nlohmann::ordered_json j;
  j["s"] = dist.boundary_distance;
  j["mu"] = dist.expected_neighbors;
  j["samples"] = dist.samples;
  j["bins"] = dist.bin_count();
  j["mean"] = dist.mean;
  j["stddev"] = dist.stddev;
  j["zero_count"] = dist.zero_count;
  out << j.dump() << '\n';
}

}  // namespace geonet
