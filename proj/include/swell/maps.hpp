#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "swell/mat2.hpp"

namespace swell {

/// Scalar profile on [0, 1], either analytic (value and derivative
/// callables) or sampled on a uniform grid with cubic Hermite interpolation
/// (Catmull-Rom slopes, second-order one-sided slopes at the ends). Sampled
/// profiles may still carry an analytic derivative; otherwise the
/// interpolant's derivative is used. Value semantics, cheap to copy.
class Profile {
 public:
  Profile() = default;

  static Profile analytic(std::function<double(double)> value,
                          std::function<double(double)> deriv);
  static Profile sampled(std::vector<double> values,
                         std::function<double(double)> deriv = {});

  bool valid() const { return impl_ != nullptr; }
  double operator()(double r) const;
  double deriv(double r) const;

  /// Pointwise multiple factor * profile (derivative scales along).
  Profile scaled(double factor) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double scale_ = 1.0;
};

/// A planar map given in Cartesian coordinates, with its differential.
/// Maps may be undefined inside inner_radius() or outside outer_radius().
class PlanarMap {
 public:
  virtual ~PlanarMap() = default;

  virtual Vec2 apply(Vec2 p) const = 0;
  virtual Mat2 differential(Vec2 p) const = 0;
  virtual double inner_radius() const { return 0.0; }
  virtual double outer_radius() const {
    return std::numeric_limits<double>::infinity();
  }
};

/// (r, theta) -> scale * (r, theta + twist * log r). Fixes the origin, has
/// constant singular values, and maps every circle about the origin to a
/// circle. Defined on all of the punctured plane, continuously extended by
/// zero at the origin.
class TwistMap final : public PlanarMap {
 public:
  explicit TwistMap(double twist, double scale = 1.0);

  double twist() const { return twist_; }
  double scale() const { return scale_; }

  Vec2 apply(Vec2 p) const override;
  Mat2 differential(Vec2 p) const override;

  /// Differential in the rotating polar frames: scale * [[1, 0], [c, 1]].
  Mat2 polar_frame_differential() const;
  SingularPair singular_values() const;

 private:
  double twist_;
  double scale_;
};

/// (r, theta) -> (psi(r), theta + phase(r)) on the closed unit disk.
/// Requires psi increasing with psi(0) = 0 (spot-checked at construction)
/// and psi(1) <= 1. Polar frame differential at radius r:
///   [[psi'(r), 0], [phase'(r) psi(r), psi(r) / r]].
class RadialMap final : public PlanarMap {
 public:
  RadialMap(Profile radial, Profile phase, double inner_radius = 0.0);

  Vec2 apply(Vec2 p) const override;
  Mat2 differential(Vec2 p) const override;
  double inner_radius() const override { return inner_; }
  double outer_radius() const override { return 1.0; }

  Mat2 polar_frame_differential(double r) const;

  double psi(double r) const;
  double psi_deriv(double r) const;
  double phase(double r) const;
  double phase_deriv(double r) const;

  /// Composition with the homothety x -> factor * x (psi scales, phase is
  /// unchanged). Requires 0 < factor <= 1 so the image stays in the disk.
  RadialMap rescaled(double factor) const;

 private:
  Profile psi_;
  Profile phase_;
  double inner_ = 0.0;
};

/// Arbitrary map from explicit value and differential callables.
class AnalyticMap final : public PlanarMap {
 public:
  AnalyticMap(std::function<Vec2(Vec2)> value,
              std::function<Mat2(Vec2)> differential,
              double inner_radius = 0.0);

  Vec2 apply(Vec2 p) const override;
  Mat2 differential(Vec2 p) const override;
  double inner_radius() const override { return inner_; }

 private:
  std::function<Vec2(Vec2)> value_;
  std::function<Mat2(Vec2)> diff_;
  double inner_ = 0.0;
};

/// x -> lambda * x with exact differential lambda * Id.
AnalyticMap make_homothety(double lambda);

Vec2 evaluate_cartesian(const PlanarMap& m, double x, double y);

/// Polar-frame differential of a radial map at (r, theta). The matrix does
/// not depend on theta; the angle is kept for labeling sample locations.
struct FrameDifferential {
  Mat2 matrix;
  double r = 0.0;
  double theta = 0.0;
};

FrameDifferential frame_differential(const RadialMap& m, double r,
                                     double theta);

/// Scale that puts the twist map with parameter c on singular-value sum 1:
/// 1 / sqrt(4 + c^2).
double twist_lambda(double c);

/// Twist map with constant singular-value sum 1 and Jacobian lambda^2:
/// twist c = sqrt(1 / lambda^2 - 4), scale lambda. Requires
/// 0 < lambda <= 1/2; at lambda = 1/2 the twist degenerates to the
/// homothety.
TwistMap build_twist_minimizer(double lambda);

/// Diagnostics from the shooting construction below.
struct OdeBuildInfo {
  double alpha = 0.0;
  double t0 = 0.0;
  double beta = 0.0;
  double psi_end = 0.0;
};

/// Area-preserving self-map of the disk with constant singular-value sum
/// alpha > 2. The radial speed is alpha/2 on [0, t0] and decays as
/// exp(-beta * S((r - t0)/(1 - t0))) beyond, with S the cubic smoothstep
/// 3u^2 - 2u^3; beta is found by bisection so that psi(1) = 1 within 1e-10.
/// The rotation rate phase' is then chosen pointwise to close the
/// singular-value sum constraint exactly. Default t0 = 1/alpha; any
/// t0 in (0, 2/alpha) is admissible.
RadialMap build_ode_minimizer(double alpha, std::optional<double> t0 = {},
                              OdeBuildInfo* info = nullptr);

}  // namespace swell
