#pragma once

#include "swell/mat2.hpp"

namespace swell {

/// Minimal squared distance to SO2 among matrices with determinant s:
///   1 - 2s            for 0 <= s <= 1/4,
///   2 (sqrt(s) - 1)^2 for s >= 1/4.
/// Convex on [0, inf), affine below the transition at s = 1/4, strictly
/// convex above it. Both branches give 1/2 at s = 1/4.
double pointwise_bound(double s);

/// One-sided derivative of pointwise_bound: -2 on (0, 1/4], 2 (1 - 1/sqrt(s))
/// on [1/4, inf). The two branches agree at the transition. Requires s > 0.
double pointwise_bound_deriv(double s);

/// pointwise_bound(s)^(p/2), the density floor for the p-energy. Requires
/// p >= 2.
double pointwise_bound_pow(double s, double p);

/// An ordered triple lower <= mid <= upper of squared-distance expressions.
struct Sandwich {
  double lower = 0.0;
  double mid = 0.0;
  double upper = 0.0;

  bool ordered(double tol = 1e-12) const {
    return lower <= mid + tol && mid <= upper + tol;
  }
};

/// dist^2(A, K)  <=  dist^2(A, SO2) - (1 - 2 det A)  <=  2 dist^2(A, K).
/// The middle member equals (sigma1 + sigma2 - 1)^2 exactly. Requires
/// det A >= 0.
Sandwich k_sandwich(const Mat2& a);

/// (sqrt(sigma2) - sqrt(sigma1))^4
///     <=  dist^2(A, SO2) - 2 (sqrt(det A) - 1)^2  <=  2 dist^2(A, CO2).
/// The right inequality holds for det A >= 0; the left needs det A >= 1/4,
/// so the returned triple is fully ordered only in that regime. Requires
/// det A >= 0.
Sandwich conformal_sandwich(const Mat2& a);

}  // namespace swell
