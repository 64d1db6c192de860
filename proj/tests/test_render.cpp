#include <doctest.h>

#include <regex>
#include <set>
#include <string>

#include "geonet/error.hpp"
#include "geonet/render.hpp"

using namespace geonet;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

std::vector<std::string> fills(const std::string& svg) {
  std::vector<std::string> out;
  const std::regex circle("<circle[^>]*fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator();
       ++it)
    out.push_back((*it)[1]);
  return out;
}

SensorNetwork three_nodes() { return SensorNetwork({{0, 0}, {1, 0}, {2, 0}}, 1.0); }

}  // namespace

TEST_CASE("color scale endpoints") {
  CHECK(scale_color(0.0) == "#0d0887");
  CHECK(scale_color(1.0) == "#f0f921");
  CHECK(scale_color(-1.0) == scale_color(0.0));
  CHECK(scale_color(2.0) == scale_color(1.0));
}

TEST_CASE("value rendering draws one circle per node") {
  const auto net = three_nodes();
  const std::vector<double> values{1.0, 2.0, 3.0};
  const std::string svg = render_values_svg(net, values);
  CHECK(count_of(svg, "<circle") == 3);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  const auto f = fills(svg);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == scale_color(0.0));
  CHECK(f[1] == scale_color(0.5));
  CHECK(f[2] == scale_color(1.0));
}

TEST_CASE("constant values map to mid-scale") {
  const auto net = three_nodes();
  const std::vector<double> values(3, 7.0);
  const auto f = fills(render_values_svg(net, values));
  REQUIRE(f.size() == 3);
  CHECK(std::set<std::string>(f.begin(), f.end()).size() == 1);
  CHECK(f[0] == scale_color(0.5));
}

TEST_CASE("value count must match the node count") {
  const auto net = three_nodes();
  const std::vector<double> values{1.0, 2.0};
  CHECK_THROWS_AS(render_values_svg(net, values), Incompatible);
  const std::vector<Classification> classes(4, Classification::boundary);
  CHECK_THROWS_AS(render_classes_svg(net, classes), Incompatible);
}

TEST_CASE("class rendering uses the class palette and outline") {
  const auto net = three_nodes();
  const std::vector<Classification> classes{Classification::boundary, Classification::interior,
                                            Classification::undecided};
  const auto region = make_rectangle(-1, -1, 3, 1);
  const std::string svg = render_classes_svg(net, classes, &region);
  const auto f = fills(svg);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == boundary_color);
  CHECK(f[1] == interior_color);
  CHECK(f[2] == undecided_color);
  CHECK(count_of(svg, "<path") == 1);
}

TEST_CASE("empty network renders an empty canvas") {
  const SensorNetwork net({}, 1.0);
  const std::string svg = render_values_svg(net, std::vector<double>{});
  CHECK(count_of(svg, "<circle") == 0);
  CHECK(count_of(svg, "<rect") == 1);
}
