#include "swell/costfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>

#include "swell/detail/numeric.hpp"

namespace swell {

struct CostFunction::Impl {
  Kind kind = Kind::Custom;
  std::string name;
  std::function<double(double)> fn;
  bool relaxed = false;
  bool finite_at_zero = true;
};

namespace {

void spot_check_shape(const std::string& name,
                      const std::function<double(double)>& fn) {
  if (std::abs(fn(1.0)) > 1e-9) {
    throw DomainError("cost function '" + name + "': f(1) must vanish");
  }
  // Strict monotonicity, sampled: decreasing into 1 from the left,
  // increasing away from 1 on the right.
  const double left[] = {0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.97};
  for (std::size_t i = 0; i + 1 < std::size(left); ++i) {
    if (!(fn(left[i]) > fn(left[i + 1]))) {
      throw DomainError("cost function '" + name +
                        "': not strictly decreasing on (0, 1]");
    }
  }
  const double right[] = {1.03, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0};
  for (std::size_t i = 0; i + 1 < std::size(right); ++i) {
    if (!(fn(right[i]) < fn(right[i + 1]))) {
      throw DomainError("cost function '" + name +
                        "': not strictly increasing on [1, inf)");
    }
  }
}

std::shared_ptr<const CostFunction::Impl> make_impl(
    CostFunction::Kind kind, std::string name,
    std::function<double(double)> fn, bool relaxed, bool finite_at_zero) {
  auto impl = std::make_shared<CostFunction::Impl>();
  impl->kind = kind;
  impl->name = std::move(name);
  impl->fn = std::move(fn);
  impl->relaxed = relaxed;
  impl->finite_at_zero = finite_at_zero;
  return impl;
}

}  // namespace

CostFunction::CostFunction(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

CostFunction CostFunction::quadratic() {
  return CostFunction(make_impl(
      Kind::Quadratic, "quadratic",
      [](double x) { return (x - 1.0) * (x - 1.0); }, false, true));
}

CostFunction CostFunction::log_square() {
  return CostFunction(make_impl(
      Kind::LogSquare, "log_square",
      [](double x) {
        const double l = std::log(x);
        return l * l;
      },
      false, false));
}

CostFunction CostFunction::cubic_abs() {
  return CostFunction(make_impl(
      Kind::CubicAbs, "cubic_abs",
      [](double x) {
        const double d = std::abs(x - 1.0);
        return d * d * d;
      },
      false, true));
}

CostFunction CostFunction::quartic() {
  return CostFunction(make_impl(
      Kind::Quartic, "quartic",
      [](double x) {
        const double d = (x - 1.0) * (x - 1.0);
        return d * d;
      },
      false, true));
}

CostFunction CostFunction::power(double p) {
  if (!(p >= 1.0)) {
    throw DomainError("CostFunction::power: exponent must be at least 1");
  }
  char label[32];
  std::snprintf(label, sizeof label, "power_%g", p);
  return CostFunction(make_impl(
      Kind::Power, label,
      [p](double x) { return std::pow(std::abs(x - 1.0), p); }, false, true));
}

CostFunction CostFunction::custom(std::string name,
                                  std::function<double(double)> fn,
                                  bool relaxed) {
  if (!fn) {
    throw DomainError("CostFunction::custom: callable is empty");
  }
  if (!relaxed) {
    spot_check_shape(name, fn);
  }
  const double near_zero = fn(1e-12);
  const bool finite0 = std::isfinite(near_zero);
  return CostFunction(make_impl(Kind::Custom, std::move(name), std::move(fn),
                                relaxed, finite0));
}

double CostFunction::operator()(double x) const {
  if (!(x > 0.0)) {
    throw DomainError("cost function '" + impl_->name +
                      "': argument must be positive");
  }
  return impl_->fn(x);
}

CostFunction::Kind CostFunction::kind() const { return impl_->kind; }
const std::string& CostFunction::name() const { return impl_->name; }
bool CostFunction::relaxed() const { return impl_->relaxed; }
bool CostFunction::finite_at_zero() const { return impl_->finite_at_zero; }

namespace {

constexpr double kTieTol = 1e-9;

// Collapses candidate minimizers to distinct pairs; pairs (x, s/x) and
// (s/x, x) describe the same unordered minimizer.
void push_candidate(std::vector<std::pair<double, double>>& pool, double x,
                    double value, double s) {
  const double lo = std::min(x, s / x);
  for (auto& c : pool) {
    if (std::abs(c.first - lo) <= 1e-7) {
      c.second = std::min(c.second, value);
      return;
    }
  }
  pool.emplace_back(lo, value);
}

}  // namespace

PairCostMin min_pair_cost(const CostFunction& f, double s, int seeds) {
  if (!(s > 0.0)) {
    throw DomainError("min_pair_cost: ratio must be positive");
  }
  if (seeds < 8) {
    throw DomainError("min_pair_cost: need at least 8 seeds");
  }

  PairCostMin out;
  out.s = s;
  if (s == 1.0) {
    out.value = 0.0;
    out.x = out.y = 1.0;
    out.conformal = true;
    out.argmin_xs = {1.0};
    return out;
  }

  const double lo = std::min(s, 1.0);
  const double hi = std::max(s, 1.0);
  const auto phi = [&](double x) { return f(x) + f(s / x); };

  // Log-spaced seed grid across [lo, hi].
  const int n = seeds;
  std::vector<double> xs(n), vs(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    xs[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    vs[i] = phi(xs[i]);
  }
  xs.front() = lo;
  xs.back() = hi;

  std::vector<std::pair<double, double>> pool;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = (i == 0) || vs[i] <= vs[i - 1];
    const bool right_ok = (i == n - 1) || vs[i] <= vs[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, n - 1)];
    const double x_star =
        detail::golden_section_min(phi, a, b, 1e-12 * (hi - lo) + 1e-14);
    push_candidate(pool, x_star, phi(x_star), s);
  }
  // The conformal point is always admissible; evaluating it directly pins
  // exact interior minima (log costs) without golden-section dust.
  const double root = std::sqrt(s);
  push_candidate(pool, root, phi(root), s);

  double best = pool.front().second;
  double best_x = pool.front().first;
  for (const auto& c : pool) {
    if (c.second < best) {
      best = c.second;
      best_x = c.first;
    }
  }

  out.value = best;
  out.x = best_x;
  out.y = s / best_x;
  if (out.x > out.y) std::swap(out.x, out.y);
  for (const auto& c : pool) {
    if (c.second <= best + kTieTol) out.argmin_xs.push_back(c.first);
  }
  std::sort(out.argmin_xs.begin(), out.argmin_xs.end());
  out.conformal = 2.0 * f(root) <= best + kTieTol;
  return out;
}

bool conformal_is_minimizer(const CostFunction& f, double s, double tol) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw DomainError("conformal_is_minimizer: ratio must lie in (0, 1]");
  }
  const PairCostMin m = min_pair_cost(f, s);
  return 2.0 * f(std::sqrt(s)) <= m.value + tol;
}

std::optional<double> phase_threshold(const CostFunction& f, double tol) {
  // Descend a log-spaced grid from 1 to 1e-6 looking for the first ratio
  // where the conformal pair loses, then sharpen by bisection against the
  // last ratio where it still won.
  constexpr int kGridPoints = 240;
  constexpr double kFloor = 1e-6;
  double prev = 1.0;
  for (int j = 1; j < kGridPoints; ++j) {
    const double s =
        std::exp(std::log(kFloor) * j / (kGridPoints - 1.0));
    if (!conformal_is_minimizer(f, s, tol)) {
      double lo = s;     // conformal loses here
      double hi = prev;  // still wins here
      for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (conformal_is_minimizer(f, mid, tol)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev = s;
  }
  return std::nullopt;
}

ConvexityScan g_convexity_scan(const CostFunction& f, double x_lo, int n) {
  if (!(x_lo < 0.0)) {
    throw DomainError("g_convexity_scan: x_lo must be negative");
  }
  if (n < 3) {
    throw DomainError("g_convexity_scan: need at least 3 samples");
  }
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double x = x_lo * (1.0 - static_cast<double>(i) / (n - 1));
    g[i] = f(std::exp(x));
  }

  ConvexityScan out;
  out.x_lo = x_lo;
  out.n = n;
  out.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < n; ++i) {
    out.min_second_difference =
        std::min(out.min_second_difference, g[i - 1] - 2.0 * g[i] + g[i + 1]);
  }
  // Midpoint convexity over every sample pair whose midpoint is again a
  // sample; the consecutive-triple case is (i, i+2).
  constexpr double kViolationTol = 1e-12;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; j += 2) {
      const int mid = (i + j) / 2;
      if (g[mid] > 0.5 * (g[i] + g[j]) + kViolationTol) {
        out.violations.emplace_back(i, j);
      }
    }
  }
  out.strictly_convex =
      out.violations.empty() && out.min_second_difference > 0.0;
  return out;
}

}  // namespace swell
