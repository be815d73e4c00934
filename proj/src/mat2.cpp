#include "swell/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swell {

namespace {

void require_nonneg_det(const Mat2& a, const char* where) {
  if (a.det() < 0.0) {
    throw DomainError(std::string(where) + ": negative determinant");
  }
}

}  // namespace

SingularPair singular_values(const Mat2& a) {
  const double n2 = a.norm_sq();
  const double d = std::abs(a.det());
  const double sum = std::sqrt(std::max(n2 + 2.0 * d, 0.0));
  const double gap = std::sqrt(std::max(n2 - 2.0 * d, 0.0));
  SingularPair p;
  p.sigma1 = std::max(0.5 * (sum - gap), 0.0);
  p.sigma2 = 0.5 * (sum + gap);
  return p;
}

Mat2 polar_factor(const Mat2& a) {
  if (a.det() < 0.0) {
    throw DomainError("polar_factor: negative determinant");
  }
  const double sum = singular_values(a).sum();
  if (sum <= 0.0) {
    throw DomainError("polar_factor: zero matrix has no nearest rotation");
  }
  return (a + a.cofactor()) * (1.0 / sum);
}

double dist_so2(const Mat2& a) {
  require_nonneg_det(a, "dist_so2");
  const SingularPair s = singular_values(a);
  return std::hypot(s.sigma1 - 1.0, s.sigma2 - 1.0);
}

double dist_co2(const Mat2& a) {
  require_nonneg_det(a, "dist_co2");
  return singular_values(a).gap() / std::sqrt(2.0);
}

double dist_k_sigma(const Mat2& a, SingularPair target) {
  require_nonneg_det(a, "dist_k_sigma");
  if (target.sigma1 < 0.0 || target.sigma2 < target.sigma1) {
    throw DomainError("dist_k_sigma: target singular values must satisfy 0 <= sigma1 <= sigma2");
  }
  const SingularPair s = singular_values(a);
  return std::hypot(s.sigma1 - target.sigma1, s.sigma2 - target.sigma2);
}

SingularPair k_slice_singular_values(double s) {
  if (!(s >= 0.0 && s <= 0.25)) {
    throw DomainError("k_slice_singular_values: s must lie in [0, 1/4]");
  }
  const double half_gap = 0.5 * std::sqrt(std::max(1.0 - 4.0 * s, 0.0));
  return {0.5 - half_gap, 0.5 + half_gap};
}

double dist_ks(const Mat2& a, double s) {
  require_nonneg_det(a, "dist_ks");
  if (!(s >= 0.0 && s <= 0.25)) {
    throw DomainError("dist_ks: s must lie in [0, 1/4]");
  }
  return dist_k_sigma(a, k_slice_singular_values(s));
}

double dist_k(const Mat2& a) {
  require_nonneg_det(a, "dist_k");
  const SingularPair s = singular_values(a);
  if (s.sigma2 <= s.sigma1 + 1.0) {
    return std::abs(s.sum() - 1.0) / std::sqrt(2.0);
  }
  return std::hypot(s.sigma1, s.sigma2 - 1.0);
}

double dist_to_well(const Mat2& a, const WellTag& well) {
  switch (well.kind) {
    case WellTag::Kind::SO2:
      return dist_so2(a);
    case WellTag::Kind::CO2:
      return dist_co2(a);
    case WellTag::Kind::K:
      return dist_k(a);
    case WellTag::Kind::Ks:
      return dist_ks(a, well.s);
    case WellTag::Kind::KSigma:
      return dist_k_sigma(a, well.target);
  }
  throw DomainError("dist_to_well: unknown well tag");
}

CofClass classify_cof_relation(const Mat2& a, double tol) {
  if (!(a.det() > 0.0)) {
    throw DomainError("classify_cof_relation: determinant must be positive");
  }
  const SingularPair s = singular_values(a);
  CofClass out;
  // |A + Cof A - (sigma-sum) O(A)| vanishes identically; the residual kept
  // here is against O(A) itself, so membership in K shows up as a sqrt(2)
  // multiple of |sigma-sum - 1|.
  out.cof_residual = (a + a.cofactor() - polar_factor(a)).norm();
  if (std::abs(s.sum() - 1.0) <= tol * std::max(1.0, s.sum())) {
    out.kind = CofClass::Kind::InK;
    return out;
  }
  // conformality is tested on the squared gap |A|^2 - 2 det A, whose
  // rounding floor scales with |A|^2; the gap itself bottoms out near
  // sqrt(eps) |A| and would mask exact conformal input
  const double gap_sq = s.gap() * s.gap();
  if (gap_sq <= tol * std::max(1.0, a.norm_sq())) {
    out.kind = CofClass::Kind::Conformal;
    out.sigma = 0.5 * s.sum();
    return out;
  }
  out.kind = CofClass::Kind::Neither;
  return out;
}

}  // namespace swell
