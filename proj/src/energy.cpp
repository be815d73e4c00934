#include "swell/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "swell/detail/numeric.hpp"

namespace swell {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTau = 2.0 * kPi;

std::string num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string j17(double v) { return num("%.17g", v); }

}  // namespace

double Domain::area() const {
  switch (kind) {
    case Kind::Disk:
      return kPi;
    case Kind::Annulus:
      return kPi * (1.0 - inner * inner);
    case Kind::Square:
      return 4.0 * half_width * half_width;
  }
  throw DomainError("Domain::area: unknown kind");
}

std::string Domain::describe() const {
  switch (kind) {
    case Kind::Disk:
      return "disk";
    case Kind::Annulus:
      return "annulus(" + num("%.9g", inner) + ")";
    case Kind::Square:
      return "square(" + num("%.9g", half_width) + ")";
  }
  throw DomainError("Domain::describe: unknown kind");
}

QuadratureGrid build_grid(const Domain& domain, int n1, int n2) {
  if (n1 < 2 || n2 < 2) {
    throw DomainError("build_grid: need at least 2 subdivisions per axis");
  }
  if (domain.kind == Domain::Kind::Annulus &&
      !(domain.inner > 0.0 && domain.inner < 1.0)) {
    throw DomainError("build_grid: annulus inner radius must lie in (0, 1)");
  }
  if (domain.kind == Domain::Kind::Square && !(domain.half_width > 0.0)) {
    throw DomainError("build_grid: square half-width must be positive");
  }

  QuadratureGrid grid;
  grid.domain = domain;
  grid.n1 = n1;
  grid.n2 = n2;
  grid.nodes.reserve(static_cast<std::size_t>(n1) * n2);
  detail::KahanSum total;

  if (domain.kind == Domain::Kind::Square) {
    const double a = domain.half_width;
    const double dx = 2.0 * a / n1;
    const double dy = 2.0 * a / n2;
    for (int i = 0; i < n1; ++i) {
      const double x = -a + (i + 0.5) * dx;
      for (int j = 0; j < n2; ++j) {
        const double y = -a + (j + 0.5) * dy;
        grid.nodes.push_back({x, y, dx * dy});
        total.add(dx * dy);
      }
    }
  } else {
    const double r0 = domain.kind == Domain::Kind::Annulus ? domain.inner
                                                           : 0.0;
    const double dr = (1.0 - r0) / n1;
    const double dth = kTau / n2;
    for (int i = 0; i < n1; ++i) {
      const double r = r0 + (i + 0.5) * dr;
      const double w = r * dr * dth;
      for (int j = 0; j < n2; ++j) {
        const double th = (j + 0.5) * dth;
        grid.nodes.push_back({r * std::cos(th), r * std::sin(th), w});
        total.add(w);
      }
    }
  }
  grid.total_weight = total.value();
  return grid;
}

namespace {

struct NodeSample {
  double jac = 0.0;
  double density = 0.0;  // dist^p or f(s1) + f(s2)
  double k_sq = 0.0;
  double co_sq = 0.0;
};

// Evaluates the integrand at every node (optionally across threads; writes
// are per-index so the schedule cannot change the result) and reduces in
// node order with compensation.
template <typename Density>
void accumulate(const PlanarMap& m, const QuadratureGrid& grid,
                const Density& density, double& energy, double& ratio,
                double& k_defect, double& co_defect) {
  const std::size_t n = grid.nodes.size();
  std::vector<NodeSample> samples(n);
  std::vector<std::string> failures(n);
  detail::parallel_for(n, detail::env_thread_count(), [&](std::size_t i) {
    const QuadNode& node = grid.nodes[i];
    try {
      const Mat2 a = m.differential({node.x, node.y});
      NodeSample s;
      s.jac = a.det();
      if (s.jac < 0.0) {
        throw EvaluationError("negative Jacobian");
      }
      s.density = density(a);
      const double dk = dist_k(a);
      const double dco = dist_co2(a);
      s.k_sq = dk * dk;
      s.co_sq = dco * dco;
      samples[i] = s;
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i].empty()) {
      throw EvaluationError(
          "energy quadrature: map evaluation failed at node (" +
          num("%.9g", grid.nodes[i].x) + ", " + num("%.9g", grid.nodes[i].y) +
          "): " + failures[i]);
    }
  }

  detail::KahanSum e_sum, j_sum, k_sum, co_sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = grid.nodes[i].weight;
    e_sum.add(w * samples[i].density);
    j_sum.add(w * samples[i].jac);
    k_sum.add(w * samples[i].k_sq);
    co_sum.add(w * samples[i].co_sq);
  }
  const double volume = grid.total_weight;
  energy = e_sum.value() / volume;
  ratio = j_sum.value() / volume;
  k_defect = k_sum.value() / volume;
  co_defect = co_sum.value() / volume;
}

// Quadrature can push an exact zero ratio a hair negative; the bound is
// only evaluated after this explicit clamp, never by widening its domain.
double clamp_ratio(double ratio) {
  if (ratio < -1e-12) {
    throw EvaluationError("energy quadrature: volume ratio is negative");
  }
  return std::max(ratio, 0.0);
}

RigidityRecord make_rigidity(double energy2, double ratio, double k_defect,
                             double volume,
                             std::optional<double> target_volume) {
  RigidityRecord rec;
  rec.k_defect = k_defect;
  rec.volume_ratio = ratio;
  rec.image.lower = k_defect;
  rec.image.mid = energy2 - pointwise_bound(clamp_ratio(ratio));
  rec.image.upper = 2.0 * k_defect;
  if (target_volume) {
    const double image_volume = ratio * volume;
    if (*target_volume < image_volume - 1e-8 * volume) {
      throw DomainError(
          "rigidity_residuals: target volume is smaller than the measured "
          "image volume");
    }
    rec.deficit = 2.0 * (*target_volume - image_volume) / volume;
    Sandwich t;
    t.lower = k_defect + rec.deficit;
    t.mid = energy2 - pointwise_bound(clamp_ratio(*target_volume / volume));
    t.upper = 2.0 * k_defect + rec.deficit;
    rec.target = t;
  }
  return rec;
}

}  // namespace

EnergyReport energy_p(const PlanarMap& m, const QuadratureGrid& grid,
                      double p) {
  if (!(p >= 2.0)) {
    throw DomainError("energy_p: exponent must be at least 2");
  }
  EnergyReport rep;
  rep.density = "p=" + num("%.9g", p);
  rep.p = p;
  rep.domain = grid.domain.describe();
  rep.n1 = grid.n1;
  rep.n2 = grid.n2;

  accumulate(
      m, grid,
      [p](const Mat2& a) { return std::pow(dist_so2(a), p); }, rep.energy,
      rep.volume_ratio, rep.k_defect, rep.co_defect);

  rep.bound = pointwise_bound_pow(clamp_ratio(rep.volume_ratio), p);
  rep.gap = rep.energy - rep.bound;
  rep.bound_guaranteed = true;
  if (p == 2.0) {
    rep.rigidity = make_rigidity(rep.energy, rep.volume_ratio, rep.k_defect,
                                 grid.total_weight, std::nullopt);
  }
  return rep;
}

EnergyReport energy_f(const PlanarMap& m, const QuadratureGrid& grid,
                      const CostFunction& f) {
  EnergyReport rep;
  rep.density = f.name();
  rep.p = 0.0;
  rep.domain = grid.domain.describe();
  rep.n1 = grid.n1;
  rep.n2 = grid.n2;

  accumulate(
      m, grid,
      [&f](const Mat2& a) {
        const SingularPair s = singular_values(a);
        if (s.sigma1 <= 0.0 && !f.finite_at_zero()) {
          throw EvaluationError("cost '" + f.name() +
                                "' diverges at a vanishing singular value");
        }
        const double c1 = s.sigma1 > 0.0 ? f(s.sigma1) : f(1e-300);
        const double c2 = f(s.sigma2);
        if (!std::isfinite(c1) || !std::isfinite(c2)) {
          throw EvaluationError("cost '" + f.name() +
                                "' is not finite at a sampled matrix");
        }
        return c1 + c2;
      },
      rep.energy, rep.volume_ratio, rep.k_defect, rep.co_defect);

  rep.bound = min_pair_cost(f, std::max(clamp_ratio(rep.volume_ratio),
                                        1e-300)).value;
  rep.gap = rep.energy - rep.bound;
  // The variational bound provably floors the energy exactly when the
  // conformal pair minimizes at every ratio up to the measured one, which
  // the log-profile convexity of these kinds guarantees.
  rep.bound_guaranteed = f.kind() == CostFunction::Kind::Quadratic ||
                         f.kind() == CostFunction::Kind::LogSquare;
  rep.relaxed_cost = f.relaxed();
  return rep;
}

RigidityRecord rigidity_residuals(const PlanarMap& m,
                                  const QuadratureGrid& grid,
                                  std::optional<double> target_volume) {
  const EnergyReport rep = energy_p(m, grid, 2.0);
  RigidityRecord rec = make_rigidity(rep.energy, rep.volume_ratio,
                                     rep.k_defect, grid.total_weight,
                                     target_volume);
  // The pointwise sandwich integrates exactly; a violated ordering in the
  // affine regime means a genuine bug, not quadrature noise.
  if (rec.volume_ratio <= 0.25 && !rec.image.ordered(1e-8)) {
    throw Error("rigidity_residuals: sandwich ordering violated");
  }
  return rec;
}

std::string to_json(const EnergyReport& report) {
  std::string out = "{\n";
  out += "  \"density\": \"" + report.density + "\",\n";
  out += "  \"p\": " + j17(report.p) + ",\n";
  out += "  \"energy\": " + j17(report.energy) + ",\n";
  out += "  \"volume_ratio\": " + j17(report.volume_ratio) + ",\n";
  out += "  \"bound\": " + j17(report.bound) + ",\n";
  out += "  \"gap\": " + j17(report.gap) + ",\n";
  out += std::string("  \"bound_guaranteed\": ") +
         (report.bound_guaranteed ? "true" : "false") + ",\n";
  out += std::string("  \"relaxed_cost\": ") +
         (report.relaxed_cost ? "true" : "false") + ",\n";
  out += "  \"k_defect\": " + j17(report.k_defect) + ",\n";
  out += "  \"co_defect\": " + j17(report.co_defect) + ",\n";
  if (report.rigidity) {
    const RigidityRecord& r = *report.rigidity;
    out += "  \"rigidity\": {\n";
    out += "    \"lower\": " + j17(r.image.lower) + ",\n";
    out += "    \"mid\": " + j17(r.image.mid) + ",\n";
    out += "    \"upper\": " + j17(r.image.upper);
    if (r.target) {
      out += ",\n    \"deficit\": " + j17(r.deficit) + ",\n";
      out += "    \"target_lower\": " + j17(r.target->lower) + ",\n";
      out += "    \"target_mid\": " + j17(r.target->mid) + ",\n";
      out += "    \"target_upper\": " + j17(r.target->upper) + "\n";
    } else {
      out += "\n";
    }
    out += "  },\n";
  }
  out += "  \"domain\": \"" + report.domain + "\",\n";
  out += "  \"n1\": " + std::to_string(report.n1) + ",\n";
  out += "  \"n2\": " + std::to_string(report.n2) + "\n";
  out += "}\n";
  return out;
}

std::string csv_header() {
  return "density,p,energy,volume_ratio,bound,gap,k_defect,co_defect,domain,"
         "n1,n2";
}

std::string to_csv_row(const EnergyReport& report) {
  std::string out = report.density + ",";
  out += num("%.9g", report.p) + ",";
  out += num("%.9g", report.energy) + ",";
  out += num("%.9g", report.volume_ratio) + ",";
  out += num("%.9g", report.bound) + ",";
  out += num("%.9g", report.gap) + ",";
  out += num("%.9g", report.k_defect) + ",";
  out += num("%.9g", report.co_defect) + ",";
  out += report.domain + ",";
  out += std::to_string(report.n1) + "," + std::to_string(report.n2);
  return out;
}

std::vector<PhaseRow> phase_scan(const std::vector<double>& lambdas, double p,
                                 int n1, int n2) {
  if (lambdas.empty()) {
    throw DomainError("phase_scan: need at least one scale");
  }
  const QuadratureGrid grid = build_grid(Domain::disk(), n1, n2);
  std::vector<PhaseRow> rows;
  rows.reserve(lambdas.size());
  for (const double lambda : lambdas) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
      throw DomainError("phase_scan: scales must lie in (0, 1)");
    }
    PhaseRow row;
    row.lambda = lambda;
    const AnalyticMap homothety = make_homothety(lambda);
    row.homothety_energy = energy_p(homothety, grid, p).energy;
    row.bound = pointwise_bound_pow(lambda * lambda, p);
    if (lambda <= 0.5) {
      const TwistMap twist = build_twist_minimizer(lambda);
      row.constructed_energy = energy_p(twist, grid, p).energy;
      row.has_twist = true;
    } else {
      row.constructed_energy = row.homothety_energy;
      row.has_twist = false;
    }
    constexpr double kTieTol = 1e-12;
    if (!row.has_twist ||
        row.constructed_energy > row.homothety_energy + kTieTol) {
      row.winner = PhaseRow::Winner::Homothety;
    } else if (row.constructed_energy < row.homothety_energy - kTieTol) {
      row.winner = PhaseRow::Winner::Twist;
    } else {
      row.winner = PhaseRow::Winner::Tie;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace swell
