#include "swell/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "swell/detail/numeric.hpp"

namespace swell {

FieldGrid make_annular_grid(double h, double r_min, double r_max) {
  if (!(h > 0.0)) {
    throw DomainError("make_annular_grid: spacing must be positive");
  }
  if (!(r_min >= 0.0 && r_min < r_max)) {
    throw DomainError("make_annular_grid: need 0 <= r_min < r_max");
  }
  FieldGrid grid;
  grid.h = h;
  grid.r_min = r_min;
  grid.r_max = r_max;
  // Node coordinates are integer multiples of h so refinement studies nest;
  // one ring of slack keeps central stencils inside the lattice.
  const int n_side = static_cast<int>(std::floor(r_max / h)) + 2;
  grid.nx = 2 * n_side + 1;
  grid.ny = 2 * n_side + 1;
  grid.x0 = -h * n_side;
  grid.y0 = -h * n_side;
  grid.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, Mat2{});
  grid.active.assign(grid.values.size(), 0);
  int interior = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double r = std::hypot(grid.x_at(i), grid.y_at(j));
      if (r >= r_min && r <= r_max) grid.active[grid.index(i, j)] = 1;
    }
  }
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (grid.is_interior(i, j)) ++interior;
    }
  }
  if (interior == 0) {
    throw DomainError(
        "make_annular_grid: spacing too coarse, no interior stencil fits");
  }
  return grid;
}

void differential_field(const PlanarMap& m, FieldGrid& grid, DiffMode mode) {
  const double reach = mode == DiffMode::FiniteDifference ? grid.h : 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (!grid.is_active(i, j)) continue;
      const double x = grid.x_at(i);
      const double y = grid.y_at(j);
      const double r = std::hypot(x, y);
      if (r - reach <= m.inner_radius() + 1e-12 ||
          r + reach >= m.outer_radius() - 1e-12) {
        throw EvaluationError(
            "differential_field: node at radius " + std::to_string(r) +
            " leaves no evaluation margin inside the map's domain");
      }
      if (mode == DiffMode::Analytic) {
        grid.values[grid.index(i, j)] = m.differential({x, y});
      } else {
        const Vec2 px = m.apply({x + grid.h, y});
        const Vec2 mx = m.apply({x - grid.h, y});
        const Vec2 py = m.apply({x, y + grid.h});
        const Vec2 my = m.apply({x, y - grid.h});
        const double inv2h = 1.0 / (2.0 * grid.h);
        grid.values[grid.index(i, j)] =
            Mat2{(px.x - mx.x) * inv2h, (py.x - my.x) * inv2h,
                 (px.y - mx.y) * inv2h, (py.y - my.y) * inv2h};
      }
    }
  }
}

namespace {

Mat2 el_stress(const Mat2& a, double p) {
  const SingularPair s = singular_values(a);
  if (!(a.det() > 0.0) || s.sigma1 < 1e-8) {
    throw EvaluationError(
        "el_residual: singular node (vanishing or orientation-reversing "
        "differential)");
  }
  const Mat2 stress = a - polar_factor(a);
  if (p == 2.0) return stress;
  return std::pow(dist_so2(a), p - 2.0) * stress;
}

// Row-wise central-difference divergence of a derived matrix field. With no
// probe list the sup and l2 run over every interior stencil; otherwise only
// over the listed nodes (each must be interior).
template <typename Transform>
ResidualPair divergence_residual(
    const FieldGrid& grid, const Transform& transform,
    const std::vector<std::pair<int, int>>* probe = nullptr) {
  const double inv2h = 1.0 / (2.0 * grid.h);
  ResidualPair out;
  detail::KahanSum l2_acc;
  bool any = false;
  // Transformed values are cached; recomputing the transform per stencil arm
  // would evaluate each node up to five times.
  std::vector<Mat2> cache(grid.values.size());
  std::vector<char> cached(grid.values.size(), 0);
  const auto at = [&](int i, int j) -> const Mat2& {
    const std::size_t idx = grid.index(i, j);
    if (!cached[idx]) {
      cache[idx] = transform(grid.values[idx]);
      cached[idx] = 1;
    }
    return cache[idx];
  };
  const auto stencil = [&](int i, int j) {
    any = true;
    const Mat2& right = at(i + 1, j);
    const Mat2& left = at(i - 1, j);
    const Mat2& up = at(i, j + 1);
    const Mat2& down = at(i, j - 1);
    const double div1 =
        (right.a11 - left.a11) * inv2h + (up.a12 - down.a12) * inv2h;
    const double div2 =
        (right.a21 - left.a21) * inv2h + (up.a22 - down.a22) * inv2h;
    const double mag = std::hypot(div1, div2);
    out.sup = std::max(out.sup, mag);
    l2_acc.add(grid.h * grid.h * mag * mag);
  };
  if (probe != nullptr) {
    for (const auto& [i, j] : *probe) stencil(i, j);
  } else {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (grid.is_interior(i, j)) stencil(i, j);
      }
    }
  }
  if (!any) {
    throw DomainError("divergence residual: grid has no interior stencil");
  }
  out.l2 = std::sqrt(l2_acc.value());
  return out;
}

ResidualPair field_residual(const FieldGrid& grid, double p, bool piola,
                            const std::vector<std::pair<int, int>>* probe) {
  if (piola) {
    return divergence_residual(
        grid, [](const Mat2& a) { return a.cofactor(); }, probe);
  }
  if (!(p >= 2.0)) {
    throw DomainError("el_residual: exponent must be at least 2");
  }
  return divergence_residual(
      grid, [p](const Mat2& a) { return el_stress(a, p); }, probe);
}

}  // namespace

ResidualPair piola_residual(const FieldGrid& grid) {
  return field_residual(grid, 2.0, true, nullptr);
}

ResidualPair el_residual(const FieldGrid& grid, double p) {
  return field_residual(grid, p, false, nullptr);
}

namespace {

int half_span(const FieldGrid& grid) { return (grid.nx - 1) / 2; }

RefinementStudy run_study(const PlanarMap& m,
                          const std::vector<double>& spacings, DiffMode mode,
                          double r_min, double r_max, double p,
                          bool piola) {
  if (spacings.size() < 2) {
    throw DomainError("refinement study: need at least two spacings");
  }
  std::vector<FieldGrid> grids;
  grids.reserve(spacings.size());
  for (const double h : spacings) {
    grids.push_back(make_annular_grid(h, r_min, r_max));
  }
  // Residuals are compared at fixed locations when the lattices nest (every
  // spacing divides the coarsest), so the sequence measures stencil
  // truncation alone. Otherwise each grid contributes its own interior sup,
  // which drifts toward the inner rim as h shrinks and understates the order
  // for fields with steep radial growth.
  std::size_t coarse = 0;
  for (std::size_t g = 1; g < grids.size(); ++g) {
    if (grids[g].h > grids[coarse].h) coarse = g;
  }
  bool nested = true;
  std::vector<int> scale(grids.size(), 1);
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const double ratio = grids[coarse].h / grids[g].h;
    scale[g] = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - scale[g]) > 1e-9 * ratio) nested = false;
  }
  std::vector<std::vector<std::pair<int, int>>> probes;
  if (nested) {
    // Probe set: coarse interior nodes that stay interior on every grid
    // (mask rims can differ by less than one coarse cell near the axes).
    probes.assign(grids.size(), {});
    const FieldGrid& cg = grids[coarse];
    const int nc = half_span(cg);
    for (int j = 0; j < cg.ny; ++j) {
      for (int i = 0; i < cg.nx; ++i) {
        if (!cg.is_interior(i, j)) continue;
        bool everywhere = true;
        for (std::size_t g = 0; g < grids.size() && everywhere; ++g) {
          const int ng = half_span(grids[g]);
          everywhere = grids[g].is_interior((i - nc) * scale[g] + ng,
                                            (j - nc) * scale[g] + ng);
        }
        if (!everywhere) continue;
        for (std::size_t g = 0; g < grids.size(); ++g) {
          const int ng = half_span(grids[g]);
          probes[g].push_back(
              {(i - nc) * scale[g] + ng, (j - nc) * scale[g] + ng});
        }
      }
    }
    if (probes[coarse].empty()) {
      throw DomainError(
          "refinement study: no stencil node is interior at every spacing, "
          "widen the annulus or refine the coarsest level");
    }
  }
  RefinementStudy study;
  for (std::size_t g = 0; g < grids.size(); ++g) {
    FieldGrid& grid = grids[g];
    differential_field(m, grid, mode);
    const ResidualPair res =
        field_residual(grid, p, piola, nested ? &probes[g] : nullptr);
    study.h.push_back(grid.h);
    study.sup_residual.push_back(res.sup);
    study.l2_residual.push_back(res.l2);
  }
  std::vector<double> log_h, log_res;
  for (std::size_t i = 0; i < study.h.size(); ++i) {
    log_h.push_back(std::log(study.h[i]));
    // Guard exact zeros (fields whose stencil is algebraically exact).
    log_res.push_back(std::log(std::max(study.sup_residual[i], 1e-300)));
  }
  study.slope = detail::fit_slope(log_h, log_res);
  return study;
}

}  // namespace

RefinementStudy el_refinement_study(const PlanarMap& m,
                                    const std::vector<double>& spacings,
                                    double p, DiffMode mode, double r_min,
                                    double r_max) {
  return run_study(m, spacings, mode, r_min, r_max, p, false);
}

RefinementStudy piola_refinement_study(const PlanarMap& m,
                                       const std::vector<double>& spacings,
                                       DiffMode mode, double r_min,
                                       double r_max) {
  return run_study(m, spacings, mode, r_min, r_max, 2.0, true);
}

}  // namespace swell
