#include "swell/bounds.hpp"

#include <cmath>

namespace swell {

double pointwise_bound(double s) {
  if (s < 0.0) {
    throw DomainError("pointwise_bound: volume ratio must be nonnegative");
  }
  if (s <= 0.25) {
    return 1.0 - 2.0 * s;
  }
  const double r = std::sqrt(s) - 1.0;
  return 2.0 * r * r;
}

double pointwise_bound_deriv(double s) {
  if (!(s > 0.0)) {
    throw DomainError("pointwise_bound_deriv: volume ratio must be positive");
  }
  if (s <= 0.25) {
    return -2.0;
  }
  return 2.0 * (1.0 - 1.0 / std::sqrt(s));
}

double pointwise_bound_pow(double s, double p) {
  if (p < 2.0) {
    throw DomainError("pointwise_bound_pow: exponent must be at least 2");
  }
  return std::pow(pointwise_bound(s), 0.5 * p);
}

Sandwich k_sandwich(const Mat2& a) {
  const double dk = dist_k(a);
  const double dso = dist_so2(a);
  Sandwich out;
  out.lower = dk * dk;
  out.mid = dso * dso - (1.0 - 2.0 * a.det());
  out.upper = 2.0 * dk * dk;
  return out;
}

Sandwich conformal_sandwich(const Mat2& a) {
  const SingularPair s = singular_values(a);
  const double dso = dist_so2(a);
  const double dco = dist_co2(a);
  const double root_gap = std::sqrt(s.sigma2) - std::sqrt(s.sigma1);
  const double conf = std::sqrt(a.det()) - 1.0;
  Sandwich out;
  out.lower = root_gap * root_gap * root_gap * root_gap;
  out.mid = dso * dso - 2.0 * conf * conf;
  out.upper = 2.0 * dco * dco;
  return out;
}

}  // namespace swell
