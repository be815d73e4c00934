#pragma once

#include <vector>

#include "swell/maps.hpp"

namespace swell {

/// Matrix field sampled on a Cartesian lattice restricted to the annulus
/// r_min <= |x| <= r_max (the origin neighborhood is excluded because the
/// constructed maps have singular or undefined differentials there). Nodes
/// outside the annulus stay inactive; divergence stencils only form at
/// active nodes whose four neighbors are active.
struct FieldGrid {
  double h = 0.0;       // lattice spacing
  double x0 = 0.0;      // coordinate of node (0, 0)
  double y0 = 0.0;
  int nx = 0;
  int ny = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<Mat2> values;
  std::vector<char> active;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  bool is_active(int i, int j) const {
    return i >= 0 && j >= 0 && i < nx && j < ny && active[index(i, j)] != 0;
  }
  bool is_interior(int i, int j) const {
    return is_active(i, j) && is_active(i - 1, j) && is_active(i + 1, j) &&
           is_active(i, j - 1) && is_active(i, j + 1);
  }
  double x_at(int i) const { return x0 + h * i; }
  double y_at(int j) const { return y0 + h * j; }
};

/// Lattice of spacing h covering [-r_max - h, r_max + h]^2 with the nodes in
/// the annulus marked active. Defaults follow the annular box used by the
/// refinement studies: r_min = 0.1. Requires 0 <= r_min < r_max and h small
/// enough that interior nodes exist.
FieldGrid make_annular_grid(double h, double r_min = 0.1,
                            double r_max = 0.85);

enum class DiffMode { Analytic, FiniteDifference };

/// Fills the grid with the map's differential at every active node, either
/// from the map's own differential or by second-order central differences
/// of the map values with step h. Finite differencing needs the map to be
/// evaluable a full step beyond every active node; EvaluationError
/// otherwise.
void differential_field(const PlanarMap& m, FieldGrid& grid, DiffMode mode);

struct ResidualPair {
  double sup = 0.0;
  double l2 = 0.0;  // sqrt(sum over stencils of h^2 |divergence|^2)
};

/// Sup (and l2) norm over interior nodes of the discrete row-wise divergence
/// of Cof(field), by central differences. Vanishes identically in the
/// continuum for any differential field. Requires at least one interior
/// node.
ResidualPair piola_residual(const FieldGrid& grid);

/// Same discrete divergence applied to the variational stress
///   P = dist^(p-2)(A, SO2) * (A - polar_factor(A)),
/// the field whose divergence vanishes at p-energy critical points.
/// Requires p >= 2, det > 0 and sigma1 >= 1e-8 at every active node;
/// EvaluationError otherwise.
ResidualPair el_residual(const FieldGrid& grid, double p);

/// Residuals across a list of lattice spacings plus the log-log slope of
/// the sup residual against h. Maps critical for the p-energy show slopes
/// near 2 (pure stencil truncation); non-critical maps plateau at the true
/// divergence magnitude.
///
/// When every spacing divides the coarsest one, the lattices share nodes
/// (coordinates are integer multiples of h) and the residuals are taken
/// over the coarse grid's interior nodes only, the same physical locations
/// at every level. A per-grid sup would wander toward the inner rim as h
/// shrinks, where radially growing derivatives inflate the truncation
/// constant and depress the fitted order. Non-divisible spacing lists fall
/// back to whole-grid residuals.
struct RefinementStudy {
  std::vector<double> h;
  std::vector<double> sup_residual;
  std::vector<double> l2_residual;
  double slope = 0.0;
};

RefinementStudy el_refinement_study(const PlanarMap& m,
                                    const std::vector<double>& spacings,
                                    double p, DiffMode mode,
                                    double r_min = 0.1, double r_max = 0.85);

RefinementStudy piola_refinement_study(const PlanarMap& m,
                                       const std::vector<double>& spacings,
                                       DiffMode mode, double r_min = 0.1,
                                       double r_max = 0.85);

}  // namespace swell
