#include "swell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swell/bounds.hpp"

namespace swell {

namespace {

constexpr double kTau = 6.283185307179586;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

Mat2 random_matrix(std::mt19937_64& rng, double det_min) {
  for (;;) {
    const Mat2 a{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0),
                 uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
    if (a.det() >= det_min) return a;
  }
}

Mat2 random_rotation(std::mt19937_64& rng) {
  return Mat2::rotation(uniform(rng, 0.0, kTau));
}

Mat2 random_k_matrix(std::mt19937_64& rng) {
  const double t = uniform(rng, 0.0, 0.5);
  return random_rotation(rng) * Mat2::diagonal(t, 1.0 - t) *
         random_rotation(rng);
}

Mat2 random_conformal(std::mt19937_64& rng, double lambda_min,
                      double lambda_max) {
  return uniform(rng, lambda_min, lambda_max) * random_rotation(rng);
}

namespace {

// Grid minimization of dist_ks over the slice parameter, zoomed twice
// around the best point. Test-grade oracle for the closed form.
double dist_k_slice_grid(const Mat2& a, int points, int zooms) {
  double lo = 0.0;
  double hi = 0.25;
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= zooms; ++level) {
    int best_i = 0;
    for (int i = 0; i < points; ++i) {
      const double s = lo + (hi - lo) * i / (points - 1.0);
      const double d = dist_ks(a, s);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    const double step = (hi - lo) / (points - 1.0);
    const double center = lo + step * best_i;
    lo = std::max(0.0, center - step);
    hi = std::min(0.25, center + step);
  }
  return best;
}

struct Tally {
  int violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double max_error = 0.0;

  void margin(double m) {
    worst_margin = std::min(worst_margin, m);
    if (m < 0.0) ++violations;
  }
  void error(double e, double tol) {
    max_error = std::max(max_error, e);
    if (e > tol) ++violations;
  }
};

}  // namespace

VerifyResult run_verify_suite(const std::string& name, int samples,
                              std::uint64_t seed) {
  if (samples < 1) {
    throw DomainError("run_verify_suite: need at least one sample");
  }
  std::mt19937_64 rng(seed);
  Tally tally;

  if (name == "pointwise_bound") {
    for (int i = 0; i < samples; ++i) {
      const Mat2 a = random_matrix(rng, 0.0);
      const double d = dist_so2(a);
      tally.margin(d * d - pointwise_bound(a.det()) + 1e-12);
    }
  } else if (name == "sandwich_k") {
    for (int i = 0; i < samples; ++i) {
      const Mat2 a = random_matrix(rng, 0.0);
      const Sandwich s = k_sandwich(a);
      tally.margin(s.mid - s.lower + 1e-12);
      tally.margin(s.upper - s.mid + 1e-12);
    }
  } else if (name == "sandwich_co") {
    for (int i = 0; i < samples; ++i) {
      const Mat2 a = random_matrix(rng, 0.25);
      const Sandwich s = conformal_sandwich(a);
      tally.margin(s.mid - s.lower + 1e-12);
      tally.margin(s.upper - s.mid + 1e-12);
    }
  } else if (name == "polar_identity") {
    for (int i = 0; i < samples; ++i) {
      Mat2 a = random_matrix(rng, 0.0);
      while (!(a.det() > 0.0)) a = random_matrix(rng, 0.0);
      const Mat2 lhs = a + a.cofactor();
      const Mat2 rhs = singular_values(a).sum() * polar_factor(a);
      tally.error((lhs - rhs).norm(), 1e-12);
      tally.error(std::abs(dist_so2(a) - (a - polar_factor(a)).norm()),
                  1e-12);
    }
  } else if (name == "dist_k_oracle") {
    for (int i = 0; i < samples; ++i) {
      const Mat2 a = random_matrix(rng, 0.0);
      tally.error(std::abs(dist_k(a) - dist_k_slice_grid(a, 1024, 2)), 1e-8);
    }
  } else {
    throw DomainError("run_verify_suite: unknown suite '" + name + "'");
  }

  VerifyResult out;
  out.suite = name;
  out.samples = samples;
  out.violations = tally.violations;
  out.worst_margin =
      std::isfinite(tally.worst_margin) ? tally.worst_margin : 0.0;
  out.max_error = tally.max_error;
  out.seed = seed;
  return out;
}

std::vector<std::string> verify_suite_names() {
  return {"pointwise_bound", "sandwich_k", "sandwich_co", "polar_identity",
          "dist_k_oracle"};
}

}  // namespace swell
