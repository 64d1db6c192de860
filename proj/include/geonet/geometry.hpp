#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "geonet/rng.hpp"

namespace geonet {

// Coordinates are in units of the communication radius unless a network is
// built with an explicit radius.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b);

using Ring = std::vector<Point>;

// Shoelace formula; positive for counterclockwise rings.
double signed_area(std::span<const Point> ring);

double point_segment_distance(Point p, Point a, Point b);

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
};

// Simple outer polygon with simple, pairwise disjoint holes strictly inside.
// The constructor validates and orients rings: outer counterclockwise,
// holes clockwise. Throws InvalidRegion.
class PolygonRegion {
 public:
  explicit PolygonRegion(Ring outer, std::vector<Ring> holes = {});

  const Ring& outer() const { return outer_; }
  const std::vector<Ring>& holes() const { return holes_; }
  const BoundingBox& bounds() const { return bounds_; }
  std::size_t ring_count() const { return 1 + holes_.size(); }

  // Ring 0 is the outer ring; ring i > 0 is hole i-1.
  const Ring& ring(std::size_t i) const { return i == 0 ? outer_ : holes_[i - 1]; }

 private:
  Ring outer_;
  std::vector<Ring> holes_;
  BoundingBox bounds_;
};

PolygonRegion make_rectangle(double min_x, double min_y, double max_x, double max_y);

// Square [0, side]^2 with a centered square hole of side `hole_side`.
PolygonRegion make_square_with_hole(double side, double hole_side);

// Ar(outer) - sum Ar(holes).
double area(const PolygonRegion& region);

// Inside the outer ring and outside every hole. Points on any ring edge
// count as inside.
bool contains(const PolygonRegion& region, Point p);

// Euclidean distance to the nearest edge of any ring. Throws DomainError
// when p is outside the region.
double distance_to_boundary(const PolygonRegion& region, Point p);

// Rejection sampler over the region's bounding box. Owns its generator.
class UniformSampler {
 public:
  // Throws SamplingFailure when the acceptance rate would be below 1e-6.
  UniformSampler(const PolygonRegion& region, std::uint64_t seed);

  Point next();
  std::vector<Point> sample(std::size_t n);

  double acceptance_rate() const { return acceptance_rate_; }

 private:
  const PolygonRegion* region_;
  Rng rng_;
  double acceptance_rate_;
};

std::vector<Point> sample_uniform(const PolygonRegion& region, std::size_t n,
                                  std::uint64_t seed);

// Unit-scale disk of `radius` around a node at `boundary_distance` from a
// locally straight boundary.
struct DiskGeometry {
  double radius = 1.0;
  double boundary_distance = 0.0;

  // Throws DomainError unless radius > 0 and boundary_distance >= 0.
  DiskGeometry(double radius, double boundary_distance);
};

// Area of the disk clipped by the half-plane at the boundary distance.
double clipped_disk_area(const DiskGeometry& disk);

// Region text format: outer vertex count, outer vertices "x y", hole count,
// then per hole a vertex count and its vertices. '#' starts a comment line.
PolygonRegion parse_region(std::istream& in);
PolygonRegion read_region_file(const std::filesystem::path& path);
void write_region(std::ostream& out, const PolygonRegion& region);

}  // namespace geonet
