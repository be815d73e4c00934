#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "swell/mat2.hpp"

namespace swell {

/// Default seed for every randomized suite; fixed so reruns are identical.
inline constexpr std::uint64_t kDefaultSeed = 123456789;

/// Matrix with entries uniform on [-3, 3], rejection-sampled until
/// det >= det_min.
Mat2 random_matrix(std::mt19937_64& rng, double det_min);

Mat2 random_rotation(std::mt19937_64& rng);

/// Random member of K: prescribed singular values (t, 1 - t) with t uniform
/// on [0, 1/2], conjugated by independent random rotations.
Mat2 random_k_matrix(std::mt19937_64& rng);

/// Random conformal matrix lambda * R with lambda uniform on
/// [lambda_min, lambda_max].
Mat2 random_conformal(std::mt19937_64& rng, double lambda_min,
                      double lambda_max);

/// Outcome of one randomized inequality suite.
struct VerifyResult {
  std::string suite;
  int samples = 0;
  int violations = 0;
  /// Smallest slack observed across all checked inequalities (negative
  /// values are violations).
  double worst_margin = 0.0;
  /// Largest deviation for suites that compare against an oracle value.
  double max_error = 0.0;
  std::uint64_t seed = 0;
};

/// Known suites:
///   pointwise_bound   dist^2(A, SO2) >= bound(det A) - 1e-12, det >= 0
///   sandwich_k        ordering of the K sandwich, det >= 0
///   sandwich_co       ordering of the conformal sandwich, det >= 1/4
///   polar_identity    A + Cof A = (sigma-sum) polar(A), det > 0
///   dist_k_oracle     closed-form dist_k against slice-grid minimization
/// Unknown names raise DomainError.
VerifyResult run_verify_suite(const std::string& name, int samples,
                              std::uint64_t seed = kDefaultSeed);

std::vector<std::string> verify_suite_names();

}  // namespace swell
