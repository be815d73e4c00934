#pragma once

#include <string>
#include <vector>

#include "swell/maps.hpp"

namespace swell {

enum class ShapeFormat { Svg, Csv };

/// Source region whose image gets exported: the disk of a given radius or
/// the square [-a, a]^2, both centered at the origin.
struct ShapeDomain {
  enum class Kind { Disk, Square };

  Kind kind = Kind::Disk;
  double half_width = 1.0;

  static ShapeDomain disk(double radius = 1.0) {
    return {Kind::Disk, radius};
  }
  static ShapeDomain square(double a) { return {Kind::Square, a}; }
};

/// Closed boundary polyline of the image of the domain under m, counter-
/// clockwise, not repeating the first point. Disk boundaries use `samples`
/// vertices; squares use `samples` per edge. Requires samples >= 16.
std::vector<Vec2> boundary_image(const PlanarMap& m, const ShapeDomain& d,
                                 int samples);

/// Signed shoelace area of a closed polyline (positive when counter-
/// clockwise).
double polygon_area(const std::vector<Vec2>& polyline);

/// Renders the image of the domain boundary as an SVG path or a CSV table
/// (columns r,theta,x,y,image_x,image_y). For disks, slices > 0 additionally
/// draws that many filled pizza-slice images to expose the interior
/// distortion; slices on squares are not supported. Output is deterministic:
/// same map, domain and options give identical bytes. SVG coordinates live
/// in a unit-sized viewBox scaled by 100.
std::string export_shape(const PlanarMap& m, const ShapeDomain& d,
                         int samples, ShapeFormat format, int slices = 0);

}  // namespace swell
