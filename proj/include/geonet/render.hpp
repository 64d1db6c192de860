#pragma once

#include <span>
#include <string>

#include "geonet/netgen.hpp"
#include "geonet/protocol.hpp"

namespace geonet {

struct RenderOptions {
  double width_px = 800.0;
  // Circle radius in region units; 0 picks 0.12 * communication radius.
  double point_radius = 0.0;
};

inline constexpr const char* boundary_color = "#d62728";
inline constexpr const char* interior_color = "#9ecae1";
inline constexpr const char* undecided_color = "#7f7f7f";

// "#rrggbb" on the dark-to-light scale, t in [0, 1].
std::string scale_color(double t);

// One circle per node; values map linearly from min (dark) to max (light).
// A constant input maps every node to mid-scale. Throws Incompatible when
// the value count differs from the node count.
std::string render_values_svg(const SensorNetwork& network, std::span<const double> values,
                              const PolygonRegion* outline = nullptr,
                              const RenderOptions& options = {});

std::string render_classes_svg(const SensorNetwork& network,
                               std::span<const Classification> classes,
                               const PolygonRegion* outline = nullptr,
                               const RenderOptions& options = {});

}  // namespace geonet
