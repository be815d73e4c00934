#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "swell/errors.hpp"
#include "swell/maps.hpp"
#include "swell/shape.hpp"

using swell::ShapeDomain;
using swell::ShapeFormat;
using swell::Vec2;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

constexpr double kPi = 3.141592653589793;

}  // namespace

TEST_CASE("boundary polylines close up with the requested resolution") {
  const auto m = swell::make_homothety(1.0);
  const auto disk = swell::boundary_image(m, ShapeDomain::disk(), 64);
  CHECK(disk.size() == 64u);
  for (const auto& v : disk) CHECK(close(v.norm(), 1.0, 1e-12));

  const auto square = swell::boundary_image(m, ShapeDomain::square(2.0), 16);
  CHECK(square.size() == 4u * 16u);
  CHECK_THROWS_AS(swell::boundary_image(m, ShapeDomain::disk(), 8),
                  swell::DomainError);
}

TEST_CASE("shoelace area of simple shapes") {
  // unit square, counter-clockwise
  const std::vector<Vec2> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(close(swell::polygon_area(sq), 1.0, 1e-15));
  // clockwise orientation flips the sign
  const std::vector<Vec2> cw = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(close(swell::polygon_area(cw), -1.0, 1e-15));

  const auto m = swell::make_homothety(1.0);
  const auto disk = swell::boundary_image(m, ShapeDomain::disk(), 4096);
  CHECK(close(swell::polygon_area(disk), kPi, 1e-5));
}

TEST_CASE("twist images of disks keep the disk area of the scale") {
  for (double c : {1.0, 5.0}) {
    const double lambda = swell::twist_lambda(c);
    const swell::TwistMap m(c, lambda);
    const auto poly =
        swell::boundary_image(m, ShapeDomain::disk(), 2048);
    const double area = swell::polygon_area(poly);
    const double expect = lambda * lambda * kPi;
    CHECK(close(area, expect, 0.01 * expect));
  }
}

TEST_CASE("csv export tabulates source and image points") {
  const auto m = swell::make_homothety(0.5);
  const std::string csv =
      swell::export_shape(m, ShapeDomain::disk(), 32, ShapeFormat::Csv);
  CHECK(csv.rfind("r,theta,x,y,image_x,image_y", 0) == 0);
  // header plus one row per sample
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 33);
  // deterministic output
  const std::string again =
      swell::export_shape(m, ShapeDomain::disk(), 32, ShapeFormat::Csv);
  CHECK(csv == again);
}

TEST_CASE("svg export draws the boundary and optional slices") {
  const auto m = swell::build_twist_minimizer(0.3);
  const std::string svg =
      swell::export_shape(m, ShapeDomain::disk(), 128, ShapeFormat::Svg, 8);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("viewBox") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // eight filled slices plus the outline
  CHECK(std::count(svg.begin(), svg.end(), '#') >= 8);

  CHECK_THROWS_AS(swell::export_shape(m, ShapeDomain::square(1.0), 64,
                                      ShapeFormat::Svg, 4),
                  swell::EvaluationError);
}
