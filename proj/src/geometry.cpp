#include "geonet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "geonet/error.hpp"
#include "geonet/text_io.hpp"

namespace geonet {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool within_box(Point p, Point a, Point b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool on_segment(Point p, Point a, Point b) {
  return cross(a, b, p) == 0.0 && within_box(p, a, b);
}

// Closed-segment intersection, including touching and collinear overlap.
bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_box(a, c, d)) return true;
  if (d2 == 0 && within_box(b, c, d)) return true;
  if (d3 == 0 && within_box(c, a, b)) return true;
  if (d4 == 0 && within_box(d, a, b)) return true;
  return false;
}

void check_ring_simple(const Ring& ring, const std::string& name) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    if (a == b) throw InvalidRegion(name + " has a repeated vertex");
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(a, b, ring[j], ring[(j + 1) % n]))
        throw InvalidRegion(name + " is self-intersecting");
    }
  }
}

bool rings_intersect(const Ring& r, const Ring& s) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (segments_intersect(r[i], r[(i + 1) % r.size()], s[j], s[(j + 1) % s.size()]))
        return true;
    }
  }
  return false;
}

// Even-odd crossing test against a single ring, ignoring the boundary.
bool ring_crossing_parity(const Ring& ring, Point p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool on_ring(const Ring& ring, Point p) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (on_segment(p, ring[i], ring[(i + 1) % ring.size()])) return true;
  }
  return false;
}

void check_finite(const Ring& ring, const std::string& name) {
  for (const Point& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidRegion(name + " has a non-finite coordinate");
  }
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double signed_area(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

PolygonRegion::PolygonRegion(Ring outer, std::vector<Ring> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  if (outer_.size() < 3) throw InvalidRegion("outer ring needs at least 3 vertices");
  check_finite(outer_, "outer ring");
  const double outer_area = signed_area(outer_);
  if (outer_area == 0.0) throw InvalidRegion("outer ring has zero area");
  if (outer_area < 0.0) std::reverse(outer_.begin(), outer_.end());
  check_ring_simple(outer_, "outer ring");

  for (std::size_t h = 0; h < holes_.size(); ++h) {
    Ring& hole = holes_[h];
    const std::string name = "hole " + std::to_string(h);
    if (hole.size() < 3) throw InvalidRegion(name + " needs at least 3 vertices");
    check_finite(hole, name);
    const double a = signed_area(hole);
    if (a == 0.0) throw InvalidRegion(name + " has zero area");
    if (a > 0.0) std::reverse(hole.begin(), hole.end());
    check_ring_simple(hole, name);
    if (rings_intersect(outer_, hole)) throw InvalidRegion(name + " touches the outer ring");
    if (!ring_crossing_parity(outer_, hole.front()))
      throw InvalidRegion(name + " is not inside the outer ring");
    for (std::size_t g = 0; g < h; ++g) {
      if (rings_intersect(holes_[g], hole) || ring_crossing_parity(holes_[g], hole.front()) ||
          ring_crossing_parity(hole, holes_[g].front()))
        throw InvalidRegion(name + " overlaps hole " + std::to_string(g));
    }
  }

  BoundingBox box{outer_[0].x, outer_[0].y, outer_[0].x, outer_[0].y};
  for (const Point& p : outer_) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  bounds_ = box;
}

PolygonRegion make_rectangle(double min_x, double min_y, double max_x, double max_y) {
  return PolygonRegion(Ring{{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}});
}

PolygonRegion make_square_with_hole(double side, double hole_side) {
  const double lo = 0.5 * (side - hole_side);
  const double hi = lo + hole_side;
  Ring outer{{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
  Ring hole{{lo, lo}, {lo, hi}, {hi, hi}, {hi, lo}};
  return PolygonRegion(std::move(outer), {std::move(hole)});
}

double area(const PolygonRegion& region) {
  double total = signed_area(region.outer());
  for (const Ring& hole : region.holes()) total += signed_area(hole);
  return total;
}

bool contains(const PolygonRegion& region, Point p) {
  const BoundingBox& box = region.bounds();
  if (p.x < box.min_x || p.x > box.max_x || p.y < box.min_y || p.y > box.max_y) return false;
  bool parity = false;
  for (std::size_t i = 0; i < region.ring_count(); ++i) {
    const Ring& ring = region.ring(i);
    if (on_ring(ring, p)) return true;
    parity ^= ring_crossing_parity(ring, p);
  }
  return parity;
}

double distance_to_boundary(const PolygonRegion& region, Point p) {
  if (!contains(region, p)) throw DomainError("point is outside the region");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < region.ring_count(); ++i) {
    const Ring& ring = region.ring(i);
    for (std::size_t k = 0; k < ring.size(); ++k)
      best = std::min(best, point_segment_distance(p, ring[k], ring[(k + 1) % ring.size()]));
  }
  return best;
}

UniformSampler::UniformSampler(const PolygonRegion& region, std::uint64_t seed)
    : region_(&region), rng_(seed) {
  const double box_area = region.bounds().area();
  acceptance_rate_ = box_area > 0.0 ? area(region) / box_area : 0.0;
  if (!(acceptance_rate_ >= 1e-6))
    throw SamplingFailure("rejection acceptance rate below 1e-6");
}

Point UniformSampler::next() {
  const BoundingBox& box = region_->bounds();
  for (;;) {
    const Point p{uniform(rng_, box.min_x, box.max_x), uniform(rng_, box.min_y, box.max_y)};
    if (contains(*region_, p)) return p;
  }
}

std::vector<Point> UniformSampler::sample(std::size_t n) {
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(next());
  return points;
}

std::vector<Point> sample_uniform(const PolygonRegion& region, std::size_t n,
                                  std::uint64_t seed) {
  if (n == 0) return {};
  return UniformSampler(region, seed).sample(n);
}

DiskGeometry::DiskGeometry(double radius_, double boundary_distance_)
    : radius(radius_), boundary_distance(boundary_distance_) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("radius must be positive");
  if (!(boundary_distance >= 0.0)) throw DomainError("boundary distance must be non-negative");
}

double clipped_disk_area(const DiskGeometry& disk) {
  const double r = disk.radius;
  const double s = std::min(disk.boundary_distance / r, 1.0);
  const double segment = std::acos(s) - s * std::sqrt(1.0 - s * s);
  return r * r * (std::numbers::pi - segment);
}

namespace {

Ring parse_ring(LineReader& reader, const std::string& what) {
  auto header = reader.require(what + " vertex count");
  const std::size_t header_line = reader.line();
  expect_fields(header, 1, header_line, what + " vertex count");
  const std::uint64_t count = parse_count(header[0], header_line);
  if (count < 3) throw ParseError(header_line, what + " needs at least 3 vertices");
  Ring ring;
  ring.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto tokens = reader.require(what + " vertex");
    expect_fields(tokens, 2, reader.line(), "vertex \"x y\"");
    ring.push_back({parse_real(tokens[0], reader.line()), parse_real(tokens[1], reader.line())});
  }
  return ring;
}

}  // namespace

PolygonRegion parse_region(std::istream& in) {
  LineReader reader(in);
  Ring outer = parse_ring(reader, "outer ring");
  auto hole_header = reader.require("hole count");
  expect_fields(hole_header, 1, reader.line(), "hole count");
  const std::uint64_t hole_count = parse_count(hole_header[0], reader.line());
  std::vector<Ring> holes;
  for (std::uint64_t h = 0; h < hole_count; ++h)
    holes.push_back(parse_ring(reader, "hole " + std::to_string(h)));
  if (auto extra = reader.next())
    throw ParseError(reader.line(), "unexpected trailing content");
  return PolygonRegion(std::move(outer), std::move(holes));
}

PolygonRegion read_region_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open region file " + path.string());
  return parse_region(in);
}

void write_region(std::ostream& out, const PolygonRegion& region) {
  auto write_ring = [&](const Ring& ring) {
    out << ring.size() << '\n';
    for (const Point& p : ring) out << format_real(p.x) << ' ' << format_real(p.y) << '\n';
  };
  write_ring(region.outer());
  out << region.holes().size() << '\n';
  for (const Ring& hole : region.holes()) write_ring(hole);
}

}  // namespace geonet
