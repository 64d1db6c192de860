#include "geonet/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "geonet/error.hpp"
#include "geonet/text_io.hpp"

namespace geonet {

namespace {

const std::array<double, 3> dark{13.0, 8.0, 135.0};
const std::array<double, 3> light{240.0, 249.0, 33.0};

std::string hex_color(std::array<double, 3> rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(rgb[0])),
                static_cast<int>(std::lround(rgb[1])), static_cast<int>(std::lround(rgb[2])));
  return buf;
}

class SvgCanvas {
 public:
  SvgCanvas(const SensorNetwork& network, const PolygonRegion* outline,
            const RenderOptions& options) {
    BoundingBox box{0.0, 0.0, 1.0, 1.0};
    if (outline) {
      box = outline->bounds();
    } else if (network.node_count() > 0) {
      box = {network.position(0).x, network.position(0).y, network.position(0).x,
             network.position(0).y};
      for (const Point& p : network.positions()) {
        box.min_x = std::min(box.min_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_x = std::max(box.max_x, p.x);
        box.max_y = std::max(box.max_y, p.y);
      }
    }
    const double margin = network.radius() * 0.5;
    box_ = {box.min_x - margin, box.min_y - margin, box.max_x + margin, box.max_y + margin};
    scale_ = options.width_px / box_.width();
    point_radius_ = (options.point_radius > 0.0 ? options.point_radius : 0.12 * network.radius()) *
                    scale_;

    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_real(px(box_.width()), 8)
         << "\" height=\"" << format_real(px(box_.height()), 8) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (outline) draw_outline(*outline);
  }

  void dot(Point p, const std::string& fill) {
    out_ << "<circle cx=\"" << format_real(x(p.x), 8) << "\" cy=\"" << format_real(y(p.y), 8)
         << "\" r=\"" << format_real(point_radius_, 6) << "\" fill=\"" << fill << "\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double px(double length) const { return length * scale_; }
  double x(double wx) const { return (wx - box_.min_x) * scale_; }
  double y(double wy) const { return (box_.max_y - wy) * scale_; }

  void draw_outline(const PolygonRegion& region) {
    out_ << "<path fill=\"none\" stroke=\"#333333\" stroke-width=\"1\" d=\"";
    for (std::size_t i = 0; i < region.ring_count(); ++i) {
      const Ring& ring = region.ring(i);
      for (std::size_t k = 0; k < ring.size(); ++k) {
        out_ << (k == 0 ? 'M' : 'L') << format_real(x(ring[k].x), 8) << ' '
             << format_real(y(ring[k].y), 8) << ' ';
      }
      out_ << "Z ";
    }
    out_ << "\"/>\n";
  }

  BoundingBox box_;
  double scale_ = 1.0;
  double point_radius_ = 1.0;
  std::ostringstream out_;
};

}  // namespace

std::string scale_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return hex_color({dark[0] + t * (light[0] - dark[0]), dark[1] + t * (light[1] - dark[1]),
                    dark[2] + t * (light[2] - dark[2])});
}

std::string render_values_svg(const SensorNetwork& network, std::span<const double> values,
                              const PolygonRegion* outline, const RenderOptions& options) {
  if (values.size() != network.node_count())
    throw Incompatible("value count does not match the network node count");
  SvgCanvas canvas(network, outline, options);
  if (!values.empty()) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    for (NodeId v = 0; v < values.size(); ++v) {
      const double t = range > 0.0 ? (values[v] - *lo) / range : 0.5;
      canvas.dot(network.position(v), scale_color(t));
    }
  }
  return canvas.finish();
}

std::string render_classes_svg(const SensorNetwork& network,
                               std::span<const Classification> classes,
                               const PolygonRegion* outline, const RenderOptions& options) {
  if (classes.size() != network.node_count())
    throw Incompatible("classification count does not match the network node count");
  SvgCanvas canvas(network, outline, options);
  for (NodeId v = 0; v < classes.size(); ++v) {
    const char* fill = classes[v] == Classification::boundary   ? boundary_color
                       : classes[v] == Classification::interior ? interior_color
                                                                : undecided_color;
    canvas.dot(network.position(v), fill);
  }
  return canvas.finish();
}

}  // namespace geonet
