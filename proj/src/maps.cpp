#include "swell/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "swell/detail/numeric.hpp"

namespace swell {

// ---------------------------------------------------------------- Profile

struct Profile::Impl {
  // Analytic path.
  std::function<double(double)> value_fn;
  std::function<double(double)> deriv_fn;
  // Sampled path: values on a uniform grid over [0, 1] plus Catmull-Rom
  // slopes; deriv_fn, when set, overrides the interpolant's derivative.
  std::vector<double> samples;
  std::vector<double> slopes;
  double step = 0.0;
};

namespace {

constexpr double kDomainSlack = 1e-9;

void hermite_weights(double t, double& h00, double& h10, double& h01,
                     double& h11) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  h10 = t3 - 2.0 * t2 + t;
  h01 = -2.0 * t3 + 3.0 * t2;
  h11 = t3 - t2;
}

void hermite_weight_derivs(double t, double& d00, double& d10, double& d01,
                           double& d11) {
  const double t2 = t * t;
  d00 = 6.0 * t2 - 6.0 * t;
  d10 = 3.0 * t2 - 4.0 * t + 1.0;
  d01 = -6.0 * t2 + 6.0 * t;
  d11 = 3.0 * t2 - 2.0 * t;
}

}  // namespace

Profile Profile::analytic(std::function<double(double)> value,
                          std::function<double(double)> deriv) {
  if (!value || !deriv) {
    throw DomainError("Profile::analytic: callables must be nonempty");
  }
  auto impl = std::make_shared<Impl>();
  impl->value_fn = std::move(value);
  impl->deriv_fn = std::move(deriv);
  Profile p;
  p.impl_ = std::move(impl);
  return p;
}

Profile Profile::sampled(std::vector<double> values,
                         std::function<double(double)> deriv) {
  if (values.size() < 4) {
    throw DomainError("Profile::sampled: need at least 4 samples");
  }
  auto impl = std::make_shared<Impl>();
  const std::size_t n = values.size();
  impl->step = 1.0 / static_cast<double>(n - 1);
  impl->slopes.resize(n);
  const double inv2h = 1.0 / (2.0 * impl->step);
  impl->slopes[0] =
      (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    impl->slopes[i] = (values[i + 1] - values[i - 1]) * inv2h;
  }
  impl->slopes[n - 1] =
      (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv2h;
  impl->samples = std::move(values);
  impl->deriv_fn = std::move(deriv);
  Profile p;
  p.impl_ = std::move(impl);
  return p;
}

double Profile::operator()(double r) const {
  if (!impl_) throw EvaluationError("Profile: empty profile");
  if (impl_->value_fn) return scale_ * impl_->value_fn(r);
  if (r < -kDomainSlack || r > 1.0 + kDomainSlack) {
    throw EvaluationError("Profile: radius " + std::to_string(r) +
                          " outside [0, 1]");
  }
  const double rc = std::clamp(r, 0.0, 1.0);
  const std::size_t last_cell = impl_->samples.size() - 2;
  const std::size_t i = std::min(
      static_cast<std::size_t>(rc / impl_->step), last_cell);
  const double t = (rc - static_cast<double>(i) * impl_->step) / impl_->step;
  double h00, h10, h01, h11;
  hermite_weights(t, h00, h10, h01, h11);
  return scale_ * (h00 * impl_->samples[i] +
                   h10 * impl_->step * impl_->slopes[i] +
                   h01 * impl_->samples[i + 1] +
                   h11 * impl_->step * impl_->slopes[i + 1]);
}

double Profile::deriv(double r) const {
  if (!impl_) throw EvaluationError("Profile: empty profile");
  if (impl_->deriv_fn) return scale_ * impl_->deriv_fn(r);
  if (r < -kDomainSlack || r > 1.0 + kDomainSlack) {
    throw EvaluationError("Profile: radius " + std::to_string(r) +
                          " outside [0, 1]");
  }
  const double rc = std::clamp(r, 0.0, 1.0);
  const std::size_t last_cell = impl_->samples.size() - 2;
  const std::size_t i = std::min(
      static_cast<std::size_t>(rc / impl_->step), last_cell);
  const double t = (rc - static_cast<double>(i) * impl_->step) / impl_->step;
  double d00, d10, d01, d11;
  hermite_weight_derivs(t, d00, d10, d01, d11);
  return scale_ * (d00 * impl_->samples[i] / impl_->step +
                   d10 * impl_->slopes[i] +
                   d01 * impl_->samples[i + 1] / impl_->step +
                   d11 * impl_->slopes[i + 1]);
}

Profile Profile::scaled(double factor) const {
  Profile p = *this;
  p.scale_ *= factor;
  return p;
}

// ---------------------------------------------------------------- TwistMap

TwistMap::TwistMap(double twist, double scale)
    : twist_(twist), scale_(scale) {
  if (!(scale > 0.0)) {
    throw DomainError("TwistMap: scale must be positive");
  }
}

Vec2 TwistMap::apply(Vec2 p) const {
  const double r = p.norm();
  if (r < 1e-300) return {0.0, 0.0};
  const double beta = std::atan2(p.y, p.x) + twist_ * std::log(r);
  return {scale_ * r * std::cos(beta), scale_ * r * std::sin(beta)};
}

Mat2 TwistMap::differential(Vec2 p) const {
  const double r = p.norm();
  if (r < 1e-12) {
    throw EvaluationError("TwistMap: differential undefined at the origin");
  }
  const double theta = std::atan2(p.y, p.x);
  const double beta = theta + twist_ * std::log(r);
  return Mat2::rotation(beta) * polar_frame_differential() *
         Mat2::rotation(theta).transposed();
}

Mat2 TwistMap::polar_frame_differential() const {
  return Mat2{1.0, 0.0, twist_, 1.0} * scale_;
}

SingularPair TwistMap::singular_values() const {
  return swell::singular_values(polar_frame_differential());
}

// ---------------------------------------------------------------- RadialMap

RadialMap::RadialMap(Profile radial, Profile phase, double inner_radius)
    : psi_(std::move(radial)), phase_(std::move(phase)),
      inner_(inner_radius) {
  if (!psi_.valid() || !phase_.valid()) {
    throw DomainError("RadialMap: profiles must be nonempty");
  }
  if (inner_ < 0.0 || inner_ >= 1.0) {
    throw DomainError("RadialMap: inner radius must lie in [0, 1)");
  }
  // Spot-check the radial profile: increasing, pinned at 0, image inside
  // the unit disk.
  const double lo = std::max(inner_, 0.0);
  if (inner_ == 0.0 && std::abs(psi_(0.0)) > 1e-9) {
    throw DomainError("RadialMap: psi(0) must vanish");
  }
  constexpr int kChecks = 257;
  double prev = psi_(lo);
  for (int i = 1; i < kChecks; ++i) {
    const double r = lo + (1.0 - lo) * i / (kChecks - 1);
    const double v = psi_(r);
    if (!(v > prev)) {
      throw DomainError("RadialMap: psi must be strictly increasing");
    }
    prev = v;
  }
  if (psi_(1.0) > 1.0 + 1e-9) {
    throw DomainError("RadialMap: psi(1) must not exceed 1");
  }
}

Vec2 RadialMap::apply(Vec2 p) const {
  const double r = p.norm();
  if (r < inner_ - 1e-12) {
    throw EvaluationError("RadialMap: point inside the excluded inner disk");
  }
  if (r < 1e-300) return {0.0, 0.0};
  const double beta = std::atan2(p.y, p.x) + phase_(r);
  const double rho = psi_(r);
  return {rho * std::cos(beta), rho * std::sin(beta)};
}

Mat2 RadialMap::differential(Vec2 p) const {
  const double r = p.norm();
  const double theta = std::atan2(p.y, p.x);
  return Mat2::rotation(theta + phase_(r)) * polar_frame_differential(r) *
         Mat2::rotation(theta).transposed();
}

Mat2 RadialMap::polar_frame_differential(double r) const {
  if (!(r > std::max(inner_, 1e-12))) {
    throw EvaluationError(
        "RadialMap: frame differential needs a radius above the puncture");
  }
  const double rho = psi_(r);
  return {psi_.deriv(r), 0.0, phase_.deriv(r) * rho, rho / r};
}

double RadialMap::psi(double r) const { return psi_(r); }
double RadialMap::psi_deriv(double r) const { return psi_.deriv(r); }
double RadialMap::phase(double r) const { return phase_(r); }
double RadialMap::phase_deriv(double r) const { return phase_.deriv(r); }

RadialMap RadialMap::rescaled(double factor) const {
  if (!(factor > 0.0 && factor <= 1.0)) {
    throw DomainError("RadialMap::rescaled: factor must lie in (0, 1]");
  }
  return RadialMap(psi_.scaled(factor), phase_, inner_);
}

// ---------------------------------------------------------------- AnalyticMap

AnalyticMap::AnalyticMap(std::function<Vec2(Vec2)> value,
                         std::function<Mat2(Vec2)> differential,
                         double inner_radius)
    : value_(std::move(value)), diff_(std::move(differential)),
      inner_(inner_radius) {
  if (!value_ || !diff_) {
    throw DomainError("AnalyticMap: callables must be nonempty");
  }
}

Vec2 AnalyticMap::apply(Vec2 p) const {
  if (p.norm() < inner_ - 1e-12) {
    throw EvaluationError("AnalyticMap: point inside the excluded inner disk");
  }
  return value_(p);
}

Mat2 AnalyticMap::differential(Vec2 p) const {
  if (p.norm() < inner_ - 1e-12) {
    throw EvaluationError("AnalyticMap: point inside the excluded inner disk");
  }
  return diff_(p);
}

AnalyticMap make_homothety(double lambda) {
  if (!(lambda > 0.0)) {
    throw DomainError("make_homothety: scale must be positive");
  }
  return AnalyticMap([lambda](Vec2 p) { return lambda * p; },
                     [lambda](Vec2) { return Mat2::identity() * lambda; });
}

// ---------------------------------------------------------------- free fns

Vec2 evaluate_cartesian(const PlanarMap& m, double x, double y) {
  return m.apply({x, y});
}

FrameDifferential frame_differential(const RadialMap& m, double r,
                                     double theta) {
  return {m.polar_frame_differential(r), r, theta};
}

double twist_lambda(double c) { return 1.0 / std::sqrt(4.0 + c * c); }

TwistMap build_twist_minimizer(double lambda) {
  if (!(lambda > 0.0 && lambda <= 0.5)) {
    throw ConstructionError(
        "build_twist_minimizer: scale must lie in (0, 1/2]");
  }
  const double c = std::sqrt(std::max(1.0 / (lambda * lambda) - 4.0, 0.0));
  return TwistMap(c, lambda);
}

// ------------------------------------------------------- build_ode_minimizer

namespace {

constexpr int kProfileCells = 4096;

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

// Radial speed of the shooting family: alpha/2 on [0, t0], then damped by
// exp(-beta * smoothstep) so it glues in a C^1 way at t0 and at 1.
double psi_speed(double r, double alpha, double t0, double beta) {
  if (r <= t0) return 0.5 * alpha;
  const double u = (r - t0) / (1.0 - t0);
  return 0.5 * alpha * std::exp(-beta * smoothstep(u));
}

// psi samples on the uniform grid, by per-cell adaptive Simpson accumulated
// in order with compensation. Also used inside the shooting iteration so
// the bisection target is exactly the stored profile's endpoint.
std::vector<double> integrate_speed(double alpha, double t0, double beta) {
  std::vector<double> values(kProfileCells + 1);
  detail::KahanSum acc;
  values[0] = 0.0;
  const double step = 1.0 / kProfileCells;
  const auto speed = [&](double r) { return psi_speed(r, alpha, t0, beta); };
  for (int i = 0; i < kProfileCells; ++i) {
    acc.add(detail::adaptive_simpson(speed, i * step, (i + 1) * step, 1e-15));
    values[i + 1] = acc.value();
  }
  return values;
}

}  // namespace

RadialMap build_ode_minimizer(double alpha, std::optional<double> t0_opt,
                              OdeBuildInfo* info) {
  if (!(alpha > 2.0)) {
    throw ConstructionError(
        "build_ode_minimizer: singular-value sum must exceed 2");
  }
  const double t0 = t0_opt.value_or(1.0 / alpha);
  if (!(t0 > 0.0 && t0 < 2.0 / alpha)) {
    throw ConstructionError(
        "build_ode_minimizer: plateau end must lie in (0, 2/alpha)");
  }

  // Shoot on beta: psi(1; 0) = alpha/2 > 1 and psi(1; beta) decreases to
  // (alpha/2) t0 < 1, so a root exists.
  const auto psi_end = [&](double beta) {
    return integrate_speed(alpha, t0, beta).back();
  };
  double beta_hi = 1.0;
  int doublings = 0;
  while (psi_end(beta_hi) > 1.0) {
    beta_hi *= 2.0;
    if (++doublings > 60) {
      throw ConstructionError(
          "build_ode_minimizer: no damping closes psi(1) = 1");
    }
  }
  double beta_lo = 0.0;
  double beta = beta_hi;
  double end = psi_end(beta);
  for (int it = 0; it < 200 && std::abs(end - 1.0) > 1e-10; ++it) {
    beta = 0.5 * (beta_lo + beta_hi);
    end = psi_end(beta);
    if (end > 1.0) {
      beta_lo = beta;
    } else {
      beta_hi = beta;
    }
  }
  if (std::abs(end - 1.0) > 1e-10) {
    throw ConstructionError(
        "build_ode_minimizer: shooting did not meet psi(1) = 1 within 1e-10");
  }

  std::vector<double> psi_values = integrate_speed(alpha, t0, beta);
  Profile psi = Profile::sampled(
      std::move(psi_values),
      [alpha, t0, beta](double r) { return psi_speed(r, alpha, t0, beta); });

  // Rotation rate closing the singular-value sum: with g = psi' + psi/r the
  // frame matrix has (sigma1 + sigma2)^2 = g^2 + (phase' psi)^2, so
  // phase' = sqrt(alpha^2 - g^2) / psi. Exactly zero on the plateau where
  // g = alpha.
  const auto phase_rate = [alpha, t0, beta, psi](double r) {
    if (r <= t0) return 0.0;
    const double rho = psi(r);
    if (!(rho > 0.0)) return 0.0;
    const double g = psi_speed(r, alpha, t0, beta) + rho / r;
    const double m = alpha * alpha - g * g;
    return m > 0.0 ? std::sqrt(m) / rho : 0.0;
  };
  std::vector<double> phase_values(kProfileCells + 1, 0.0);
  {
    detail::KahanSum acc;
    const double step = 1.0 / kProfileCells;
    for (int i = 0; i < kProfileCells; ++i) {
      const double a = i * step;
      const double b = (i + 1) * step;
      if (b > t0) {
        acc.add(detail::adaptive_simpson(phase_rate, std::max(a, t0), b,
                                         1e-14));
      }
      phase_values[i + 1] = acc.value();
    }
  }
  Profile phase = Profile::sampled(std::move(phase_values), phase_rate);

  RadialMap map(psi, phase);

  // The construction promises a constant singular-value sum; verify on a
  // dense radius sample before handing the map out.
  double worst = 0.0;
  for (int i = 1; i <= kProfileCells; ++i) {
    const double r = static_cast<double>(i) / kProfileCells;
    const SingularPair sv =
        swell::singular_values(map.polar_frame_differential(r));
    worst = std::max(worst, std::abs(sv.sum() - alpha));
  }
  if (worst > 1e-6) {
    throw ConstructionError(
        "build_ode_minimizer: singular-value sum drifts beyond 1e-6");
  }

  if (info != nullptr) {
    info->alpha = alpha;
    info->t0 = t0;
    info->beta = beta;
    info->psi_end = end;
  }
  return map;
}

}  // namespace swell
