#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swell/errors.hpp"

namespace swell {

/// Per-singular-value cost f : (0, inf) -> [0, inf) with f(1) = 0, strictly
/// decreasing on (0, 1] and strictly increasing on [1, inf). Built-in kinds
/// satisfy this by construction; custom callables are spot-checked on a
/// sample grid when constructed, unless relaxed validation is requested.
class CostFunction {
 public:
  enum class Kind { Quadratic, LogSquare, CubicAbs, Quartic, Power, Custom };

  struct Impl;

  static CostFunction quadratic();   // (x - 1)^2
  static CostFunction log_square();  // (log x)^2
  static CostFunction cubic_abs();   // |x - 1|^3
  static CostFunction quartic();     // (x - 1)^4
  static CostFunction power(double p);  // |x - 1|^p, p >= 1

  /// Wraps an arbitrary callable. With relaxed = false the shape conditions
  /// above are spot-checked and violations raise DomainError; with
  /// relaxed = true they are skipped and the function is flagged so reports
  /// can say the minimization ran without guarantees.
  static CostFunction custom(std::string name,
                             std::function<double(double)> fn,
                             bool relaxed = false);

  /// Evaluates the cost. Requires x > 0.
  double operator()(double x) const;

  Kind kind() const;
  const std::string& name() const;
  bool relaxed() const;
  /// Whether f stays bounded as x -> 0+. Costs that diverge there (LogSquare)
  /// admit no zero singular values under energy_f.
  bool finite_at_zero() const;

 private:
  explicit CostFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Minimum of f(x) + f(y) over pairs with x * y = s, together with where it
/// is attained. For s <= 1 the minimizer lies in [s, 1]^2, for s >= 1 in
/// [1, s]^2; the search covers exactly that square.
struct PairCostMin {
  double s = 0.0;
  double value = 0.0;
  double x = 0.0;  // argmin pair, ordered x <= y, x * y = s
  double y = 0.0;
  /// True when the conformal pair (sqrt(s), sqrt(s)) attains the minimum
  /// within tolerance. At ties (Quadratic at s = 1/4) this is set and all
  /// tied minimizers are listed.
  bool conformal = false;
  /// Smaller coordinate of every minimizer found within tie tolerance.
  std::vector<double> argmin_xs;
};

/// Computes PairCostMin by seeding a log-spaced grid (default 512 points)
/// across the admissible interval and refining every local basin by
/// golden-section search. Requires s > 0.
PairCostMin min_pair_cost(const CostFunction& f, double s, int seeds = 512);

/// True when the conformal pair minimizes f(x) + f(y) under x y = s, up to
/// tol. Requires 0 < s <= 1.
bool conformal_is_minimizer(const CostFunction& f, double s,
                            double tol = 1e-9);

/// Largest s* in (0, 1) below which the conformal pair stops minimizing:
/// scans a log-spaced grid down to s = 1e-6, then sharpens the flip by
/// bisection. Returns nullopt when no flip is found (LogSquare).
std::optional<double> phase_threshold(const CostFunction& f,
                                      double tol = 1e-9);

/// Second-difference scan of g(x) = f(exp(x)) on n uniform samples of
/// [x_lo, 0]. Midpoint convexity of g on [log s, 0] is what makes the
/// conformal pair optimal at volume ratio s, so the scan is the cheap
/// sufficient check callers run before trusting conformal_is_minimizer.
struct ConvexityScan {
  double x_lo = 0.0;
  int n = 0;
  double min_second_difference = 0.0;
  /// Sample index pairs (i, j) whose midpoint sample violates
  /// g((x_i + x_j)/2) <= (g(x_i) + g(x_j))/2.
  std::vector<std::pair<int, int>> violations;
  bool strictly_convex = false;
};

/// Requires x_lo < 0 and n >= 3.
ConvexityScan g_convexity_scan(const CostFunction& f, double x_lo, int n);

}  // namespace swell
