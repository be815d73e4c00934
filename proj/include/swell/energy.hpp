#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swell/bounds.hpp"
#include "swell/costfn.hpp"
#include "swell/maps.hpp"

namespace swell {

/// Integration region: the unit disk, the annulus r0 < |x| < 1, or the
/// square [-a, a]^2.
struct Domain {
  enum class Kind { Disk, Annulus, Square };

  Kind kind = Kind::Disk;
  double inner = 0.0;       // Annulus only
  double half_width = 1.0;  // Square only

  /// Annulus with the default puncture used to integrate maps whose
  /// differential blows up at the origin.
  static Domain disk() { return {Kind::Disk, 0.0, 1.0}; }
  static Domain annulus(double r0 = 1e-6) { return {Kind::Annulus, r0, 1.0}; }
  static Domain square(double a) { return {Kind::Square, 0.0, a}; }

  double area() const;
  std::string describe() const;
};

struct QuadNode {
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;
};

/// Midpoint-rule product grid. Disk and annulus grids are polar with weight
/// r dr dtheta; the radial midpoint rule integrates the weight exactly, so
/// the node weights sum to the domain area up to rounding. Square grids are
/// Cartesian midpoint. Node order is fixed (radial-major), which pins the
/// compensated-summation order downstream.
struct QuadratureGrid {
  Domain domain;
  int n1 = 0;  // radial (or x) subdivisions
  int n2 = 0;  // angular (or y) subdivisions
  std::vector<QuadNode> nodes;
  double total_weight = 0.0;
};

/// Requires n1, n2 >= 2.
QuadratureGrid build_grid(const Domain& domain, int n1, int n2);

/// Integrated sandwich between the mean squared distance to K and the
/// energy surplus over the volume-ratio bound; see rigidity_residuals.
struct RigidityRecord {
  Sandwich image;                    // against the measured image volume
  std::optional<Sandwich> target;    // against a prescribed target volume
  double deficit = 0.0;              // 2 (V_target - V_image) / V_domain
  double k_defect = 0.0;             // mean dist^2(differential, K)
  double volume_ratio = 0.0;
};

/// What a distortion-energy quadrature measured.
struct EnergyReport {
  std::string density;        // "p=2", "p=4", or the cost-function name
  double p = 0.0;             // 0 when the density is a cost function
  double energy = 0.0;        // mean of dist^p or of f(sigma1) + f(sigma2)
  double volume_ratio = 0.0;  // mean Jacobian / domain area
  double bound = 0.0;         // density floor evaluated at volume_ratio
  double gap = 0.0;           // energy - bound
  /// Whether the bound provably floors the energy for this density
  /// (p-energies and costs with convex, monotone log-profile); for other
  /// costs it is reported but not guaranteed.
  bool bound_guaranteed = true;
  /// Flagged when the cost skipped shape validation (custom, relaxed).
  bool relaxed_cost = false;
  double k_defect = 0.0;      // mean dist^2(differential, K)
  double co_defect = 0.0;     // mean dist^2(differential, CO2)
  std::optional<RigidityRecord> rigidity;  // filled for p = 2
  std::string domain;
  int n1 = 0;
  int n2 = 0;
};

std::string to_json(const EnergyReport& report);
std::string csv_header();
std::string to_csv_row(const EnergyReport& report);

/// Mean p-distortion (1/|M|) * integral of dist^p(differential, SO2) with
/// the volume-ratio bound pointwise_bound(ratio)^(p/2) attached. Requires
/// p >= 2. Fails with EvaluationError when the map cannot be evaluated at a
/// node or has negative Jacobian there.
EnergyReport energy_p(const PlanarMap& m, const QuadratureGrid& grid,
                      double p);

/// Mean cost energy (1/|M|) * integral of f(sigma1) + f(sigma2), bounded
/// below by min_pair_cost(f, volume_ratio) when f's log-profile is convex.
/// A vanishing singular value under a cost unbounded at zero raises
/// EvaluationError.
EnergyReport energy_f(const PlanarMap& m, const QuadratureGrid& grid,
                      const CostFunction& f);

/// Quantitative rigidity around the p = 2 bound. Always returns
///   mean dist^2(., K)  <=  E_2 - bound(ratio)  <=  2 mean dist^2(., K)
/// as `image`; when a target volume V_target >= measured image volume is
/// supplied, also returns the shifted triple with the volume deficit
/// 2 (V_target - V_image) / |M| added to both outer members and the bound
/// taken at V_target / |M|. Throws DomainError if V_target falls below the
/// measured image volume beyond quadrature tolerance.
RigidityRecord rigidity_residuals(const PlanarMap& m,
                                  const QuadratureGrid& grid,
                                  std::optional<double> target_volume = {});

/// One scale of the constructed-minimizer comparison: the homothety with
/// energy (2 (1 - lambda)^2)^(p/2) against the twist construction (only
/// defined for lambda <= 1/2), both over the same grid, with the volume-
/// ratio bound at lambda^2.
struct PhaseRow {
  enum class Winner { Homothety, Twist, Tie };

  double lambda = 0.0;
  double homothety_energy = 0.0;
  /// Best constructed competitor: twist energy when lambda <= 1/2, else the
  /// homothety again.
  double constructed_energy = 0.0;
  bool has_twist = false;
  double bound = 0.0;
  Winner winner = Winner::Homothety;
};

std::vector<PhaseRow> phase_scan(const std::vector<double>& lambdas, double p,
                                 int n1, int n2);

}  // namespace swell
