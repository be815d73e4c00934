#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace swell::detail {

/// Kahan compensated accumulator. Summation order is fixed by the caller;
/// with a deterministic order the result is bit-reproducible.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

/// Bisection root of a continuous function with f(lo) and f(hi) of opposite
/// sign. Stops when the bracket is narrower than x_tol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol, int max_iter = 200);

/// Golden-section minimizer of a unimodal function on [a, b]; returns the
/// abscissa of the minimum located to within x_tol.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double x_tol);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs fn(i) for i in [0, n), fanning out over `threads` workers when
/// threads > 1. fn must only write to per-index state so the result does not
/// depend on the schedule.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

/// Thread count from the SWELL_THREADS environment variable, default 1.
int env_thread_count();

}  // namespace swell::detail
