#include <cmath>

#include "doctest.h"
#include "swell/criticality.hpp"
#include "swell/errors.hpp"
#include "swell/maps.hpp"

using swell::DiffMode;
using swell::Mat2;
using swell::Vec2;

namespace {

// cubic-quadratic pair: divergence of the cofactor field vanishes in the
// continuum but not for the central-difference stencil
swell::AnalyticMap quartic_map() {
  return swell::AnalyticMap(
      [](Vec2 p) {
        return Vec2{p.x * p.x * p.x * p.y * p.y, p.x * p.x * p.y * p.y * p.y};
      },
      [](Vec2 p) {
        const double x = p.x, y = p.y;
        return Mat2{3 * x * x * y * y, 2 * x * x * x * y, 2 * x * y * y * y,
                    3 * x * x * y * y};
      });
}

}  // namespace

TEST_CASE("annular lattice masks the origin and the far corners") {
  const auto grid = swell::make_annular_grid(1.0 / 32.0);
  CHECK(grid.nx == grid.ny);
  int interior = 0;
  bool origin_active = false;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double r = std::hypot(grid.x_at(i), grid.y_at(j));
      if (grid.is_active(i, j)) {
        CHECK(r >= 0.1 - 1e-12);
        CHECK(r <= 0.85 + 1e-12);
        if (r < 1e-12) origin_active = true;
      }
      if (grid.is_interior(i, j)) ++interior;
    }
  }
  CHECK(!origin_active);
  CHECK(interior > 1000);
  CHECK_THROWS_AS(swell::make_annular_grid(0.5, 0.4, 0.45),
                  swell::DomainError);
}

TEST_CASE("differential field fills active nodes both ways") {
  const auto m = quartic_map();
  auto grid = swell::make_annular_grid(1.0 / 24.0);
  auto fd_grid = grid;
  swell::differential_field(m, grid, DiffMode::Analytic);
  swell::differential_field(m, fd_grid, DiffMode::FiniteDifference);
  double worst = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (!grid.is_active(i, j)) continue;
      const auto diff =
          grid.values[grid.index(i, j)] - fd_grid.values[grid.index(i, j)];
      worst = std::max(worst, diff.norm());
    }
  }
  // second-order differencing at h = 1/24
  CHECK(worst < 5e-3);
  CHECK(worst > 0.0);
}

TEST_CASE("finite differencing refuses maps undefined beyond the stencil") {
  // map restricted to the unit disk: nodes near r_max need values at
  // r_max + h, outside the domain
  const auto m = swell::build_ode_minimizer(3.0);
  auto grid = swell::make_annular_grid(1.0 / 16.0, 0.1, 0.99);
  CHECK_THROWS_AS(swell::differential_field(m, grid, DiffMode::FiniteDifference),
                  swell::EvaluationError);
}

TEST_CASE("low-degree polynomial cofactors are divergence-free exactly") {
  // components of degree at most two make the central difference of the
  // cofactor field land on the exact derivative, so the discrete residual
  // collapses to rounding noise
  const swell::AnalyticMap m(
      [](Vec2 p) { return Vec2{p.x * p.x * p.y, p.x + p.y * p.y * p.y}; },
      [](Vec2 p) {
        return Mat2{2 * p.x * p.y, p.x * p.x, 1.0, 3 * p.y * p.y};
      });
  auto grid = swell::make_annular_grid(1.0 / 32.0);
  swell::differential_field(m, grid, DiffMode::Analytic);
  const auto res = swell::piola_residual(grid);
  CHECK(res.sup <= 1e-10);
  CHECK(res.l2 <= 1e-10);
}

TEST_CASE("piola residual of smooth maps shrinks at second order") {
  const auto check_study = [](const swell::RefinementStudy& study) {
    REQUIRE(study.h.size() == 3u);
    CHECK(study.sup_residual[0] > study.sup_residual[1]);
    CHECK(study.sup_residual[1] > study.sup_residual[2]);
    CHECK(study.slope > 1.9);
    CHECK(study.slope < 2.1);
  };
  const std::vector<double> hs = {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
  check_study(
      swell::piola_refinement_study(quartic_map(), hs, DiffMode::Analytic));
  const swell::AnalyticMap skew(
      [](Vec2 p) {
        return Vec2{p.x * p.y * p.y * p.y * p.y, p.x * p.x * p.x * p.x * p.y};
      },
      [](Vec2 p) {
        const double x = p.x, y = p.y;
        return Mat2{y * y * y * y, 4 * x * y * y * y, 4 * x * x * x * y,
                    x * x * x * x};
      });
  check_study(swell::piola_refinement_study(skew, hs, DiffMode::Analytic));
  // third smooth map: the twist, whose cofactor field is also the p=2
  // stress up to sign
  check_study(swell::piola_refinement_study(
      swell::build_twist_minimizer(1.0 / 3.0),
      {1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0}, DiffMode::Analytic));
}

TEST_CASE("inside the well the stress is the negated cofactor field") {
  // twist differentials have unit singular-value sum everywhere, so the
  // p=2 stress equals -cof and the two residuals must coincide node for
  // node, hence also in sup and l2
  const auto m = swell::build_twist_minimizer(0.4);
  auto grid = swell::make_annular_grid(1.0 / 48.0);
  swell::differential_field(m, grid, DiffMode::Analytic);
  const auto el = swell::el_residual(grid, 2.0);
  const auto piola = swell::piola_residual(grid);
  CHECK(el.sup == doctest::Approx(piola.sup).epsilon(1e-11));
  CHECK(el.l2 == doctest::Approx(piola.l2).epsilon(1e-11));
}

TEST_CASE("twist minimizers satisfy the discrete stress balance") {
  const auto m = swell::build_twist_minimizer(1.0 / 3.0);
  for (double p : {2.0, 4.0}) {
    const auto study = swell::el_refinement_study(
        m, {1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0}, p, DiffMode::Analytic);
    CHECK(study.slope > 1.9);
    CHECK(study.sup_residual.back() < study.sup_residual.front());
  }
}

TEST_CASE("homothety stress balance is exact on the lattice") {
  const auto m = swell::make_homothety(0.4);
  auto grid = swell::make_annular_grid(1.0 / 24.0);
  swell::differential_field(m, grid, DiffMode::Analytic);
  for (double p : {2.0, 3.0, 4.0}) {
    const auto res = swell::el_residual(grid, p);
    CHECK(res.sup <= 1e-12);
  }
  CHECK_THROWS_AS(swell::el_residual(grid, 1.0), swell::DomainError);
}

TEST_CASE("stress residual rejects degenerate differentials") {
  const swell::AnalyticMap reflect(
      [](Vec2 p) { return Vec2{p.x, -p.y}; },
      [](Vec2) { return Mat2::diagonal(1.0, -1.0); });
  auto grid = swell::make_annular_grid(1.0 / 16.0);
  swell::differential_field(reflect, grid, DiffMode::Analytic);
  CHECK_THROWS_AS(swell::el_residual(grid, 2.0), swell::EvaluationError);
}

TEST_CASE("refinement study input validation") {
  const auto m = swell::make_homothety(0.5);
  CHECK_THROWS_AS(
      swell::el_refinement_study(m, {1.0 / 16.0}, 2.0, DiffMode::Analytic),
      swell::DomainError);
}
