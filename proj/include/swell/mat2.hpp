#pragma once

#include <cmath>

#include "swell/errors.hpp"

namespace swell {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double t) const { return {t * x, t * y}; }
};

inline Vec2 operator*(double t, Vec2 v) { return {t * v.x, t * v.y}; }

/// Nonnegative singular values in ascending order (sigma1 <= sigma2).
struct SingularPair {
  double sigma1 = 0.0;
  double sigma2 = 0.0;

  double sum() const { return sigma1 + sigma2; }
  double gap() const { return sigma2 - sigma1; }
  double product() const { return sigma1 * sigma2; }
};

/// Real 2x2 matrix, row-major.
///
/// The distances below are Frobenius distances to matrix wells, all carved
/// out of the det >= 0 half-space:
///   SO2       rotations
///   CO2       conformal matrices (nonnegative multiples of rotations)
///   K         matrices whose singular values sum to 1
///   K_s       the det = s slice of K, 0 <= s <= 1/4
///   K_{a,b}   matrices with singular values exactly (a, b)
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c};
  }

  double det() const { return a11 * a22 - a12 * a21; }
  double norm_sq() const {
    return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  Mat2 transposed() const { return {a11, a21, a12, a22}; }

  /// Cof [[a,b],[c,d]] = [[d,-c],[-b,a]]; satisfies A (Cof A)^T = det(A) Id.
  Mat2 cofactor() const { return {a22, -a21, -a12, a11}; }

  Vec2 operator*(Vec2 v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator+(const Mat2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Mat2 operator*(double t) const {
    return {t * a11, t * a12, t * a21, t * a22};
  }
};

inline Mat2 operator*(double t, const Mat2& m) { return m * t; }

/// Closed-form singular values: sigma2 +- sigma1 = sqrt(|A|^2 +- 2|det A|),
/// with both radicands clamped at zero against cancellation.
SingularPair singular_values(const Mat2& a);

/// Nearest rotation to A, computed as (A + Cof A) / (sigma1 + sigma2).
/// Requires det A >= 0 and A != 0; for det A = 0 this still returns a valid
/// closest rotation.
Mat2 polar_factor(const Mat2& a);

/// sqrt((sigma1 - 1)^2 + (sigma2 - 1)^2). Requires det A >= 0.
double dist_so2(const Mat2& a);

/// (sigma2 - sigma1) / sqrt(2). Requires det A >= 0.
double dist_co2(const Mat2& a);

/// Distance to the orbit of matrices with the prescribed singular values.
/// Requires det A >= 0 and 0 <= target.sigma1 <= target.sigma2.
double dist_k_sigma(const Mat2& a, SingularPair target);

/// Singular values (1/2 - sqrt(1 - 4s)/2, 1/2 + sqrt(1 - 4s)/2) of the
/// det = s slice of K. Requires 0 <= s <= 1/4.
SingularPair k_slice_singular_values(double s);

/// Distance to the det = s slice of K. Requires det A >= 0, 0 <= s <= 1/4.
double dist_ks(const Mat2& a, double s);

/// Distance to K:
///   |sigma1 + sigma2 - 1| / sqrt(2)        when sigma2 <= sigma1 + 1,
///   sqrt(sigma1^2 + (sigma2 - 1)^2)        otherwise (projection hits the
///                                          sigma1 = 0 corner).
/// Requires det A >= 0.
double dist_k(const Mat2& a);

/// Tagged union over the wells above, for callers that select a target well
/// at runtime.
struct WellTag {
  enum class Kind { SO2, CO2, K, Ks, KSigma };

  Kind kind = Kind::SO2;
  double s = 0.0;           // Ks only
  SingularPair target{};    // KSigma only

  static WellTag so2() { return {Kind::SO2, 0.0, {}}; }
  static WellTag co2() { return {Kind::CO2, 0.0, {}}; }
  static WellTag k() { return {Kind::K, 0.0, {}}; }
  static WellTag ks(double s) { return {Kind::Ks, s, {}}; }
  static WellTag k_sigma(SingularPair target) {
    return {Kind::KSigma, 0.0, target};
  }
};

double dist_to_well(const Mat2& a, const WellTag& well);

///// Classifies A by the relation A + Cof A = (sigma1 + sigma2) O(A):
/// membership in K (sigma-sum 1), conformality (equal singular values), or
/// neither. Requires det A > 0. The tolerance scales with the matrix: the
/// K test bounds |sigma-sum - 1| by tol * max(1, sigma-sum), the conformal
/// test bounds the squared gap |A|^2 - 2 det A by tol * max(1, |A|^2).
struct CofClass {
  enum class Kind { InK, Conformal, Neither };

  Kind kind = Kind::Neither;
  double sigma = 0.0;         // conformal factor when kind == Conformal
  double cof_residual = 0.0;  // |A + Cof A - (sigma-sum) O(A)|
};

CofClass classify_cof_relation(const Mat2& a, double tol = 1e-9);

}  // namespace swell
