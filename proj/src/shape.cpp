#include "swell/shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace swell {

namespace {

constexpr double kTau = 6.283185307179586;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Fill palette for pizza slices, cycled deterministically.
const char* slice_color(int i) {
  static const char* const palette[] = {
      "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#eeca3b",
      "#b279a2", "#ff9da6", "#9d755d", "#bab0ac", "#2f4b7c", "#d45087"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

std::vector<Vec2> square_boundary(double a, int per_edge) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(4) * per_edge);
  const Vec2 corners[4] = {{-a, -a}, {a, -a}, {a, a}, {-a, a}};
  for (int e = 0; e < 4; ++e) {
    const Vec2 from = corners[e];
    const Vec2 to = corners[(e + 1) % 4];
    for (int i = 0; i < per_edge; ++i) {
      const double t = static_cast<double>(i) / per_edge;
      pts.push_back(from + t * (to - from));
    }
  }
  return pts;
}

std::string svg_path(const std::vector<Vec2>& pts, bool close) {
  // SVG's y axis points down; flip so the plot reads like math coordinates.
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += i == 0 ? "M" : "L";
    d += fmt("%.4f", 100.0 * pts[i].x) + " " + fmt("%.4f", -100.0 * pts[i].y);
  }
  if (close) d += "Z";
  return d;
}

}  // namespace

std::vector<Vec2> boundary_image(const PlanarMap& m, const ShapeDomain& d,
                                 int samples) {
  if (samples < 16) {
    throw DomainError("boundary_image: need at least 16 samples");
  }
  std::vector<Vec2> source;
  if (d.kind == ShapeDomain::Kind::Disk) {
    source.reserve(samples);
    for (int j = 0; j < samples; ++j) {
      const double theta = kTau * j / samples;
      source.push_back(
          {d.half_width * std::cos(theta), d.half_width * std::sin(theta)});
    }
  } else {
    source = square_boundary(d.half_width, samples);
  }
  std::vector<Vec2> image;
  image.reserve(source.size());
  for (const Vec2& p : source) image.push_back(m.apply(p));
  return image;
}

double polygon_area(const std::vector<Vec2>& polyline) {
  double twice = 0.0;
  const std::size_t n = polyline.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polyline[i];
    const Vec2& b = polyline[(i + 1) % n];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

std::string export_shape(const PlanarMap& m, const ShapeDomain& d,
                         int samples, ShapeFormat format, int slices) {
  if (samples < 16) {
    throw DomainError("export_shape: need at least 16 samples");
  }
  if (slices > 0 && d.kind != ShapeDomain::Kind::Disk) {
    throw EvaluationError(
        "export_shape: slice rendering is only supported on disk domains");
  }

  const std::vector<Vec2> image = boundary_image(m, d, samples);

  if (format == ShapeFormat::Csv) {
    const std::vector<Vec2> src = d.kind == ShapeDomain::Kind::Square
                                      ? square_boundary(d.half_width, samples)
                                      : std::vector<Vec2>{};
    std::string out = "r,theta,x,y,image_x,image_y\n";
    for (int j = 0; j < static_cast<int>(image.size()); ++j) {
      double r, theta, x, y;
      if (d.kind == ShapeDomain::Kind::Disk) {
        r = d.half_width;
        theta = kTau * j / samples;
        x = r * std::cos(theta);
        y = r * std::sin(theta);
      } else {
        x = src[j].x;
        y = src[j].y;
        r = std::hypot(x, y);
        theta = std::atan2(y, x);
      }
      out += fmt("%.9g", r) + "," + fmt("%.9g", theta) + "," +
             fmt("%.9g", x) + "," + fmt("%.9g", y) + "," +
             fmt("%.9g", image[j].x) + "," + fmt("%.9g", image[j].y) + "\n";
    }
    return out;
  }

  // Gather every drawn polyline first so the viewBox can cover them all.
  std::vector<std::pair<std::string, std::vector<Vec2>>> fills;
  if (slices > 0) {
    const double outer = d.half_width;
    const double inner = std::max(m.inner_radius() * 1.0001, outer * 1e-3);
    const int arc_pts = std::max(8, samples / std::max(slices, 1));
    const int ray_pts = std::max(8, samples / 8);
    for (int sidx = 0; sidx < slices; ++sidx) {
      const double th0 = kTau * sidx / slices;
      const double th1 = kTau * (sidx + 1) / slices;
      std::vector<Vec2> wedge;
      for (int i = 0; i <= ray_pts; ++i) {  // outward along theta0
        const double r = inner + (outer - inner) * i / ray_pts;
        wedge.push_back(m.apply({r * std::cos(th0), r * std::sin(th0)}));
      }
      for (int i = 1; i <= arc_pts; ++i) {  // outer arc
        const double th = th0 + (th1 - th0) * i / arc_pts;
        wedge.push_back(
            m.apply({outer * std::cos(th), outer * std::sin(th)}));
      }
      for (int i = 1; i <= ray_pts; ++i) {  // back inward along theta1
        const double r = outer - (outer - inner) * i / ray_pts;
        wedge.push_back(m.apply({r * std::cos(th1), r * std::sin(th1)}));
      }
      for (int i = 1; i < arc_pts; ++i) {  // inner arc back to the start
        const double th = th1 - (th1 - th0) * i / arc_pts;
        wedge.push_back(
            m.apply({inner * std::cos(th), inner * std::sin(th)}));
      }
      fills.emplace_back(slice_color(sidx), std::move(wedge));
    }
  }

  double lo_x = image[0].x, hi_x = image[0].x;
  double lo_y = image[0].y, hi_y = image[0].y;
  const auto stretch = [&](const std::vector<Vec2>& pts) {
    for (const Vec2& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  };
  stretch(image);
  for (const auto& f : fills) stretch(f.second);
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-6;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  svg += fmt("%.4f", 100.0 * (lo_x - pad)) + " " +
         fmt("%.4f", 100.0 * (-hi_y - pad)) + " " +
         fmt("%.4f", 100.0 * (hi_x - lo_x + 2.0 * pad)) + " " +
         fmt("%.4f", 100.0 * (hi_y - lo_y + 2.0 * pad)) + "\">\n";
  for (const auto& f : fills) {
    svg += "  <path d=\"" + svg_path(f.second, true) + "\" fill=\"" +
           f.first + "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  }
  svg += "  <path d=\"" + svg_path(image, true) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace swell
