// Acceptance checks: one line per criterion, [PASS]/[FAIL], exit 1 on any
// failure. Everything is seeded, so reruns print identical numbers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "swell/bounds.hpp"
#include "swell/costfn.hpp"
#include "swell/criticality.hpp"
#include "swell/energy.hpp"
#include "swell/maps.hpp"
#include "swell/mat2.hpp"
#include "swell/shape.hpp"
#include "swell/verify.hpp"

using swell::Mat2;
using swell::Vec2;

namespace {

constexpr double kPi = 3.141592653589793;

int g_failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
              what.c_str());
  if (!ok) ++g_failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// plain grid minimization of the slice distance over the product interval
double dist_k_grid_plain(const Mat2& a, int points) {
  double best = swell::dist_ks(a, 0.0);
  for (int i = 1; i < points; ++i) {
    best = std::min(best, swell::dist_ks(a, 0.25 * i / (points - 1.0)));
  }
  return best;
}

// 1. squared rotation distance dominates the volume-ratio bound, and the
// bound is attained by conformal stretches above one half and by members of
// the sum-one well.
void criterion_pointwise_bound() {
  std::mt19937_64 rng(swell::kDefaultSeed);
  double worst = 1e300;
  int violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const Mat2 a = swell::random_matrix(rng, 0.0);
    const double d = swell::dist_so2(a);
    const double margin = d * d - swell::pointwise_bound(a.det());
    worst = std::min(worst, margin);
    if (margin < -1e-12) ++violations;
  }
  double worst_eq = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Mat2 c = swell::random_conformal(rng, 0.5, 3.0);
    const double d = swell::dist_so2(c);
    worst_eq = std::max(worst_eq,
                        std::abs(d * d - swell::pointwise_bound(c.det())));
  }
  for (int i = 0; i < 10000; ++i) {
    const Mat2 k = swell::random_k_matrix(rng);
    const double d = swell::dist_so2(k);
    worst_eq = std::max(worst_eq,
                        std::abs(d * d - swell::pointwise_bound(k.det())));
  }
  const bool ok = violations == 0 && worst_eq <= 1e-12;
  report(1, ok,
         "pointwise bound on 100000 samples, equality on 20000 constructed "
         "minimizers (worst margin " +
             num(worst) + ", worst equality error " + num(worst_eq) + ")");
}

// 2. both quantitative sandwiches stay ordered on 100000 samples
void criterion_sandwiches() {
  std::mt19937_64 rng(swell::kDefaultSeed + 1);
  int bad_k = 0, bad_co = 0;
  for (int i = 0; i < 100000; ++i) {
    const Mat2 a = swell::random_matrix(rng, 0.0);
    if (!swell::k_sandwich(a).ordered(1e-10)) ++bad_k;
  }
  for (int i = 0; i < 100000; ++i) {
    const Mat2 a = swell::random_matrix(rng, 0.25);
    if (!swell::conformal_sandwich(a).ordered(1e-10)) ++bad_co;
  }
  report(2, bad_k == 0 && bad_co == 0,
         "sandwich orderings on 100000 samples each (well violations " +
             std::to_string(bad_k) + ", conformal violations " +
             std::to_string(bad_co) + ")");
}

// 3. the closed-form well distance matches plain slice-grid minimization at
// two resolutions
void criterion_dist_k_oracle() {
  std::mt19937_64 rng(swell::kDefaultSeed + 2);
  double worst_coarse = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat2 a = swell::random_matrix(rng, 0.0);
    worst_coarse = std::max(
        worst_coarse, std::abs(swell::dist_k(a) - dist_k_grid_plain(a, 1024)));
  }
  double worst_fine = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat2 a = swell::random_matrix(rng, 0.0);
    worst_fine = std::max(
        worst_fine, std::abs(swell::dist_k(a) - dist_k_grid_plain(a, 100000)));
  }
  const bool ok = worst_coarse <= 1e-4 && worst_fine <= 1e-8;
  report(3, ok,
         "well distance vs slice grids: 1024 points err " + num(worst_coarse) +
             " (tol 1e-4), 100000 points err " + num(worst_fine) +
             " (tol 1e-8)");
}

// 4. twist construction at scale one third: closed-form energies, and it
// beats the homothety by exactly the bound gap
void criterion_twist_energies() {
  const auto twist = swell::build_twist_minimizer(1.0 / 3.0);
  const auto hom = swell::make_homothety(1.0 / 3.0);
  const auto grid = swell::build_grid(swell::Domain::disk(), 64, 64);
  const auto t2 = swell::energy_p(twist, grid, 2.0);
  const auto t4 = swell::energy_p(twist, grid, 4.0);
  const auto h2 = swell::energy_p(hom, grid, 2.0);
  const double e2_err = std::abs(t2.energy - 7.0 / 9.0);
  const double e4_err = std::abs(t4.energy - 49.0 / 81.0);
  const double gap_err = std::abs(h2.gap - 1.0 / 9.0);
  const bool ok = e2_err <= 1e-9 && e4_err <= 1e-9 &&
                  h2.energy > t2.energy && gap_err <= 1e-12;
  report(4, ok,
         "twist at one third: |E2 - 7/9| = " + num(e2_err) +
             ", |E4 - 49/81| = " + num(e4_err) +
             ", homothety excess above twist = " +
             num(h2.energy - t2.energy) + ", |homothety gap - 1/9| = " +
             num(gap_err));
}

// 5. shooting construction at alpha = 3: constant singular-value sum, area
// preservation, and the rescaled map hits the twist energy
void criterion_ode_minimizer() {
  const auto m = swell::build_ode_minimizer(3.0);
  double worst_sum = 0.0;
  for (int i = 1; i <= 4096; ++i) {
    const double r = static_cast<double>(i) / 4096.0;
    const auto sv = swell::singular_values(m.polar_frame_differential(r));
    worst_sum = std::max(worst_sum, std::abs(sv.sum() - 3.0));
  }
  const auto grid = swell::build_grid(swell::Domain::disk(), 4096, 8);
  const auto self = swell::energy_p(m, grid, 2.0);
  const double ratio_err = std::abs(self.volume_ratio - 1.0);
  const auto scaled = m.rescaled(1.0 / 3.0);
  const auto e2 = swell::energy_p(scaled, grid, 2.0);
  const double e2_err = std::abs(e2.energy - 7.0 / 9.0);
  const bool ok = worst_sum <= 1e-6 && ratio_err <= 1e-6 && e2_err <= 1e-6;
  report(5, ok,
         "shooting construction: sup |sum - 3| = " + num(worst_sum) +
             ", |volume ratio - 1| = " + num(ratio_err) +
             ", rescaled |E2 - 7/9| = " + num(e2_err));
}

// 6. the constructed-map comparison flips winner exactly at one half
void criterion_phase_transition() {
  std::vector<double> lambdas;
  for (int k = 1; k <= 19; ++k) lambdas.push_back(k / 20.0);
  const auto rows = swell::phase_scan(lambdas, 2.0, 64, 64);
  bool ok = rows.size() == lambdas.size();
  double eq_err = 0.0;
  for (const auto& row : rows) {
    if (row.lambda < 0.5) {
      ok = ok && row.winner == swell::PhaseRow::Winner::Twist && row.has_twist;
    } else if (row.lambda == 0.5) {
      ok = ok && row.winner == swell::PhaseRow::Winner::Tie;
      eq_err = std::max(std::abs(row.homothety_energy - 0.5),
                        std::abs(row.constructed_energy - 0.5));
      ok = ok && eq_err <= 1e-9;
    } else {
      ok = ok && row.winner == swell::PhaseRow::Winner::Homothety &&
           !row.has_twist;
    }
  }
  report(6, ok,
         "winner is the twist strictly below one half and the homothety "
         "strictly above; both energies at one half equal 1/2 within " +
             num(eq_err));
}

// 7. two-factor cost minimization: quadratic reproduces the pointwise bound,
// the log cost is conformal at every ratio, thresholds land where expected
void criterion_cost_minimization() {
  const auto quad = swell::CostFunction::quadratic();
  double worst_quad = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = std::exp(std::log(1e-3) +
                              (std::log(4.0) - std::log(1e-3)) * i / 199.0);
    worst_quad = std::max(worst_quad,
                          std::abs(swell::min_pair_cost(quad, s).value -
                                   swell::pointwise_bound(s)));
  }
  const auto logc = swell::CostFunction::log_square();
  double worst_log = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = std::exp(std::log(1e-6) * (199.0 - i) / 199.0);
    const double expect = 0.5 * std::log(s) * std::log(s);
    worst_log = std::max(worst_log,
                         std::abs(swell::min_pair_cost(logc, s).value -
                                  expect));
  }
  const auto th = swell::phase_threshold(quad);
  const bool th_ok = th.has_value() && std::abs(*th - 0.25) <= 0.01;
  const bool log_flat = !swell::phase_threshold(logc).has_value();
  const bool ok =
      worst_quad <= 1e-8 && worst_log <= 1e-8 && th_ok && log_flat;
  report(7, ok,
         "pair-cost minimization: quadratic vs bound err " + num(worst_quad) +
             ", log cost vs closed form err " + num(worst_log) +
             ", quadratic threshold " + (th ? num(*th) : "none") +
             ", log threshold " + (log_flat ? "none" : "found"));
}

// 8. lattice refinement: constructed minimizers show pure second-order
// stencil decay, generic divergence-free fields do too, and a map that is
// not p = 4 critical plateaus
void criterion_refinement() {
  const std::vector<double> hs = {1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0};
  const auto twist = swell::build_twist_minimizer(1.0 / 3.0);
  const auto s2 = swell::el_refinement_study(twist, hs, 2.0,
                                             swell::DiffMode::Analytic);
  const auto s4 = swell::el_refinement_study(twist, hs, 4.0,
                                             swell::DiffMode::Analytic);

  const swell::AnalyticMap poly1(
      [](Vec2 p) {
        return Vec2{p.x * p.x * p.x * p.y * p.y, p.x * p.x * p.y * p.y * p.y};
      },
      [](Vec2 p) {
        const double x = p.x, y = p.y;
        return Mat2{3 * x * x * y * y, 2 * x * x * x * y, 2 * x * y * y * y,
                    3 * x * x * y * y};
      });
  const swell::AnalyticMap poly2(
      [](Vec2 p) {
        return Vec2{p.x * p.y * p.y * p.y * p.y,
                    p.x * p.x * p.x * p.x * p.y};
      },
      [](Vec2 p) {
        const double x = p.x, y = p.y;
        return Mat2{y * y * y * y, 4 * x * y * y * y, 4 * x * x * x * y,
                    x * x * x * x};
      });
  const auto p1 = swell::piola_refinement_study(poly1, hs,
                                                swell::DiffMode::Analytic);
  const auto p2 = swell::piola_refinement_study(poly2, hs,
                                                swell::DiffMode::Analytic);

  const auto ode = swell::build_ode_minimizer(3.0).rescaled(1.0 / 3.0);
  const auto plateau = swell::el_refinement_study(ode, hs, 4.0,
                                                  swell::DiffMode::Analytic);
  const double plateau_min = *std::min_element(plateau.sup_residual.begin(),
                                               plateau.sup_residual.end());

  const bool ok = s2.slope >= 1.9 && s4.slope >= 1.9 && p1.slope >= 1.9 &&
                  p2.slope >= 1.9 && plateau_min > 1e-3;
  report(8, ok,
         "refinement slopes: twist p=2 " + num(s2.slope) + ", twist p=4 " +
             num(s4.slope) + ", cofactor fields " + num(p1.slope) + " and " +
             num(p2.slope) + "; non-critical plateau floor " +
             num(plateau_min));
}

// 9. quantitative rigidity of the homothety at scale 0.4
void criterion_rigidity() {
  const auto grid = swell::build_grid(swell::Domain::disk(), 64, 64);
  const auto r =
      swell::rigidity_residuals(swell::make_homothety(0.4), grid);
  const double e1 = std::abs(r.image.lower - 0.02);
  const double e2 = std::abs(r.image.mid - 0.04);
  const double e3 = std::abs(r.image.upper - 0.04);
  const bool ok = e1 <= 1e-10 && e2 <= 1e-10 && e3 <= 1e-10;
  report(9, ok,
         "homothety rigidity triple errors " + num(e1) + ", " + num(e2) +
             ", " + num(e3) + " (tol 1e-10)");
}

// 10. exported boundary images of twisted disks enclose the predicted area
void criterion_shape_areas() {
  bool ok = true;
  double worst_rel = 0.0;
  for (double c : {1.0, 5.0, 14.0}) {
    const double lambda = swell::twist_lambda(c);
    const swell::TwistMap m(c, lambda);
    const auto poly =
        swell::boundary_image(m, swell::ShapeDomain::disk(), 2048);
    const double area = swell::polygon_area(poly);
    const double expect = lambda * lambda * kPi;
    const double rel = std::abs(area - expect) / expect;
    worst_rel = std::max(worst_rel, rel);
    ok = ok && rel <= 0.01;
  }
  report(10, ok,
         "twisted disk areas match the squared scale within 1% (worst "
         "relative error " +
             num(worst_rel) + ")");
}

}  // namespace

int main() {
  criterion_pointwise_bound();
  criterion_sandwiches();
  criterion_dist_k_oracle();
  criterion_twist_energies();
  criterion_ode_minimizer();
  criterion_phase_transition();
  criterion_cost_minimization();
  criterion_refinement();
  criterion_rigidity();
  criterion_shape_areas();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
