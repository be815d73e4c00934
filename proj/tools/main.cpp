// Command-line front end: distortion bounds, constructed minimizers, phase
// scans, lattice criticality checks and randomized verification suites.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swell/bounds.hpp"
#include "swell/costfn.hpp"
#include "swell/criticality.hpp"
#include "swell/energy.hpp"
#include "swell/errors.hpp"
#include "swell/maps.hpp"
#include "swell/shape.hpp"
#include "swell/verify.hpp"

namespace {

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw swell::EvaluationError("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw swell::EvaluationError("failed writing output file '" + path + "'");
  }
}

std::string json_block_inline(const std::string& json) {
  // to_json ends with a newline; trim it so the block can be nested
  std::string trimmed = json;
  while (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
  return trimmed;
}

swell::CostFunction make_cost(const std::string& name) {
  if (name == "quadratic") return swell::CostFunction::quadratic();
  if (name == "logsq") return swell::CostFunction::log_square();
  if (name == "cubicabs") return swell::CostFunction::cubic_abs();
  if (name == "quartic") return swell::CostFunction::quartic();
  if (name.rfind("pow:", 0) == 0) {
    try {
      return swell::CostFunction::power(std::stod(name.substr(4)));
    } catch (const std::logic_error&) {
      throw swell::DomainError("bad cost exponent in '" + name + "'");
    }
  }
  throw swell::DomainError(
      "unknown cost '" + name +
      "' (use quadratic, logsq, cubicabs, quartic or pow:<p>)");
}

int run_bound(const std::vector<double>& ratios, double p,
              const std::string& cost_name, const std::string& format,
              const std::string& out_path) {
  std::string out;
  const bool with_cost = !cost_name.empty();
  const swell::CostFunction f =
      with_cost ? make_cost(cost_name) : swell::CostFunction::quadratic();
  if (format == "json") {
    out += "[\n";
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const double s = ratios[i];
      out += "  {\"s\": " + g17(s) + ", \"p\": " + g17(p) + ", \"bound\": " +
             g17(swell::pointwise_bound(s)) + ", \"bound_pow\": " +
             g17(swell::pointwise_bound_pow(s, p));
      if (with_cost) {
        const auto m = swell::min_pair_cost(f, s);
        out += ", \"cost\": \"" + f.name() + "\", \"value\": " + g17(m.value) +
               ", \"x\": " + g17(m.x) + ", \"y\": " + g17(m.y) +
               ", \"conformal\": " + (m.conformal ? "true" : "false");
      }
      out += "}";
      out += (i + 1 < ratios.size()) ? ",\n" : "\n";
    }
    out += "]\n";
  } else {
    out = with_cost ? "s,bound,bound_pow,cost,value,x,y,conformal\n"
                    : "s,bound,bound_pow\n";
    for (const double s : ratios) {
      out += g9(s) + "," + g9(swell::pointwise_bound(s)) + "," +
             g9(swell::pointwise_bound_pow(s, p));
      if (with_cost) {
        const auto m = swell::min_pair_cost(f, s);
        out += "," + f.name() + "," + g9(m.value) + "," + g9(m.x) + "," +
               g9(m.y) + "," + (m.conformal ? "1" : "0");
      }
      out += "\n";
    }
  }
  write_output(out_path, out);
  return 0;
}

int run_phase(double lo, double hi, double step, double p, int n1, int n2,
              const std::string& format, const std::string& out_path) {
  if (!(step > 0.0)) {
    throw swell::DomainError("phase: step must be positive");
  }
  std::vector<double> lambdas;
  for (int k = 0;; ++k) {
    const double lambda = lo + k * step;
    if (lambda > hi + 1e-12) break;
    lambdas.push_back(lambda);
  }
  const auto rows = swell::phase_scan(lambdas, p, n1, n2);
  const auto winner_word = [](swell::PhaseRow::Winner w) {
    switch (w) {
      case swell::PhaseRow::Winner::Homothety: return "homothety";
      case swell::PhaseRow::Winner::Twist: return "twist";
      default: return "tie";
    }
  };
  std::string out;
  if (format == "json") {
    out += "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out += "  {\"lambda\": " + g17(r.lambda) + ", \"homothety_energy\": " +
             g17(r.homothety_energy) + ", \"constructed_energy\": " +
             g17(r.constructed_energy) + ", \"bound\": " + g17(r.bound) +
             ", \"has_twist\": " + (r.has_twist ? "true" : "false") +
             ", \"winner\": \"" + winner_word(r.winner) + "\"}";
      out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "]\n";
  } else {
    out = "lambda,homothety_energy,constructed_energy,bound,has_twist,winner\n";
    for (const auto& r : rows) {
      out += g9(r.lambda) + "," + g9(r.homothety_energy) + "," +
             g9(r.constructed_energy) + "," + g9(r.bound) + "," +
             (r.has_twist ? "1" : "0") + "," + winner_word(r.winner) + "\n";
    }
  }
  write_output(out_path, out);
  return 0;
}

int run_verify(const std::string& suite, int samples, std::uint64_t seed) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = swell::verify_suite_names();
  } else {
    names.push_back(suite);
  }
  int total_violations = 0;
  for (const auto& name : names) {
    const auto res = swell::run_verify_suite(name, samples, seed);
    std::printf(
        "suite=%s samples=%d violations=%d worst_margin=%.17g "
        "max_error=%.17g seed=%llu\n",
        res.suite.c_str(), res.samples, res.violations, res.worst_margin,
        res.max_error, static_cast<unsigned long long>(res.seed));
    total_violations += res.violations;
  }
  return total_violations > 0 ? 2 : 0;
}

int run_construct_twist(double lambda, double p, int n1, int n2, int samples,
                        bool svg, const std::string& out_dir) {
  const swell::TwistMap m = swell::build_twist_minimizer(lambda);
  const auto grid = swell::build_grid(swell::Domain::disk(), n1, n2);
  const auto rep = swell::energy_p(m, grid, p);

  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/twist_";

  std::string csv = "r,psi,dpsi,h,dh\n";
  for (int i = 1; i <= samples; ++i) {
    const double r = static_cast<double>(i) / samples;
    csv += g9(r) + "," + g9(lambda * r) + "," + g9(lambda) + "," +
           g9(m.twist() * std::log(r)) + "," + g9(m.twist() / r) + "\n";
  }
  write_output(base + "profile.csv", csv);

  const auto sv = m.singular_values();
  std::string json = "{\n";
  json += "  \"construction\": \"twist\",\n";
  json += "  \"lambda\": " + g17(lambda) + ",\n";
  json += "  \"twist_parameter\": " + g17(m.twist()) + ",\n";
  json += "  \"sigma1\": " + g17(sv.sigma1) + ",\n";
  json += "  \"sigma2\": " + g17(sv.sigma2) + ",\n";
  json += "  \"report\": " + json_block_inline(swell::to_json(rep)) + "\n";
  json += "}\n";
  write_output(base + "report.json", json);

  if (svg) {
    write_output(base + "shape.svg",
                 swell::export_shape(m, swell::ShapeDomain::disk(), 512,
                                     swell::ShapeFormat::Svg, 8));
  }
  std::string files = base + "profile.csv," + base + "report.json";
  if (svg) files += "," + base + "shape.svg";
  std::printf("twist lambda=%s energy_p%s=%s bound=%s files=%s\n",
              g9(lambda).c_str(), g9(p).c_str(), g17(rep.energy).c_str(),
              g17(rep.bound).c_str(), files.c_str());
  return 0;
}

int run_construct_ode(double alpha, std::optional<double> t0, double p,
                      int n1, int n2, int samples, bool svg,
                      const std::string& out_dir) {
  swell::OdeBuildInfo info;
  const swell::RadialMap m = swell::build_ode_minimizer(alpha, t0, &info);
  const swell::RadialMap scaled = m.rescaled(1.0 / alpha);
  const auto grid = swell::build_grid(swell::Domain::disk(), n1, n2);
  const auto self_rep = swell::energy_p(m, grid, p);
  const auto scaled_rep = swell::energy_p(scaled, grid, p);

  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/ode_";

  std::string csv = "r,psi,dpsi,phase,dphase\n";
  for (int i = 1; i <= samples; ++i) {
    const double r = static_cast<double>(i) / samples;
    csv += g9(r) + "," + g9(m.psi(r)) + "," + g9(m.psi_deriv(r)) + "," +
           g9(m.phase(r)) + "," + g9(m.phase_deriv(r)) + "\n";
  }
  write_output(base + "profile.csv", csv);

  std::string json = "{\n";
  json += "  \"construction\": \"ode\",\n";
  json += "  \"alpha\": " + g17(info.alpha) + ",\n";
  json += "  \"t0\": " + g17(info.t0) + ",\n";
  json += "  \"beta\": " + g17(info.beta) + ",\n";
  json += "  \"psi_end\": " + g17(info.psi_end) + ",\n";
  json += "  \"self_report\": " +
          json_block_inline(swell::to_json(self_rep)) + ",\n";
  json += "  \"rescaled_report\": " +
          json_block_inline(swell::to_json(scaled_rep)) + "\n";
  json += "}\n";
  write_output(base + "report.json", json);

  if (svg) {
    write_output(base + "shape.svg",
                 swell::export_shape(scaled, swell::ShapeDomain::disk(), 512,
                                     swell::ShapeFormat::Svg, 8));
  }
  std::string files = base + "profile.csv," + base + "report.json";
  if (svg) files += "," + base + "shape.svg";
  std::printf(
      "ode alpha=%s t0=%s beta=%s self_energy=%s rescaled_energy=%s "
      "files=%s\n",
      g9(alpha).c_str(), g9(info.t0).c_str(), g17(info.beta).c_str(),
      g17(self_rep.energy).c_str(), g17(scaled_rep.energy).c_str(),
      files.c_str());
  return 0;
}

struct MapSpec {
  std::string label;
  std::unique_ptr<swell::PlanarMap> map;
};

MapSpec parse_map_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw swell::DomainError(
        "map spec must look like twist:<lambda>, ode:<alpha>, poly:1 or "
        "poly:2");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  MapSpec out;
  out.label = spec;
  if (kind == "twist") {
    double lambda = 0.0;
    try {
      lambda = std::stod(arg);
    } catch (const std::logic_error&) {
      throw swell::DomainError("bad twist scale '" + arg + "'");
    }
    out.map = std::make_unique<swell::TwistMap>(
        swell::build_twist_minimizer(lambda));
  } else if (kind == "ode") {
    double alpha = 0.0;
    try {
      alpha = std::stod(arg);
    } catch (const std::logic_error&) {
      throw swell::DomainError("bad ode sum '" + arg + "'");
    }
    out.map = std::make_unique<swell::RadialMap>(
        swell::build_ode_minimizer(alpha).rescaled(1.0 / alpha));
  } else if (kind == "poly" && arg == "1") {
    out.map = std::make_unique<swell::AnalyticMap>(
        [](swell::Vec2 q) {
          return swell::Vec2{q.x * q.x * q.x * q.y * q.y,
                             q.x * q.x * q.y * q.y * q.y};
        },
        [](swell::Vec2 q) {
          const double x = q.x, y = q.y;
          return swell::Mat2{3 * x * x * y * y, 2 * x * x * x * y,
                             2 * x * y * y * y, 3 * x * x * y * y};
        });
  } else if (kind == "poly" && arg == "2") {
    out.map = std::make_unique<swell::AnalyticMap>(
        [](swell::Vec2 q) {
          return swell::Vec2{q.x * q.y * q.y * q.y * q.y,
                             q.x * q.x * q.x * q.x * q.y};
        },
        [](swell::Vec2 q) {
          const double x = q.x, y = q.y;
          return swell::Mat2{y * y * y * y, 4 * x * y * y * y,
                             4 * x * x * x * y, x * x * x * x};
        });
  } else {
    throw swell::DomainError("unknown map spec '" + spec + "'");
  }
  return out;
}

int run_critical(const std::string& map_spec, const std::vector<double>& ps,
                 const std::vector<int>& levels, bool piola,
                 const std::string& mode_name, const std::string& out_path) {
  const MapSpec spec = parse_map_spec(map_spec);
  const swell::DiffMode mode = mode_name == "fd"
                                   ? swell::DiffMode::FiniteDifference
                                   : swell::DiffMode::Analytic;
  std::vector<double> spacings;
  for (const int level : levels) {
    if (level < 2) {
      throw swell::DomainError("levels must be at least 2");
    }
    spacings.push_back(1.0 / level);
  }

  std::string out = "map,p,h,sup_residual,l2_residual,slope\n";
  const auto append_study = [&](double p, const swell::RefinementStudy& st) {
    for (std::size_t i = 0; i < st.h.size(); ++i) {
      out += spec.label + "," + g9(p) + "," + g9(st.h[i]) + "," +
             g9(st.sup_residual[i]) + "," + g9(st.l2_residual[i]) + "," +
             g9(st.slope) + "\n";
    }
  };
  if (piola) {
    append_study(0.0,
                 swell::piola_refinement_study(*spec.map, spacings, mode));
  } else {
    for (const double p : ps) {
      append_study(
          p, swell::el_refinement_study(*spec.map, spacings, p, mode));
    }
  }
  write_output(out_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "planar map distortion: energies, bounds, minimizers, diagnostics"};
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);

  // bound
  auto* bound = app.add_subcommand(
      "bound", "volume-ratio floor of the distortion energy");
  std::vector<double> bound_s;
  double bound_p = 2.0;
  std::string bound_cost, bound_format = "csv", bound_out;
  bound->add_option("--s", bound_s, "volume ratios (comma separated)")
      ->required()
      ->delimiter(',');
  bound->add_option("--p", bound_p, "distortion exponent (default 2)");
  bound->add_option("--cost", bound_cost,
                    "per-singular-value cost: quadratic, logsq, cubicabs, "
                    "quartic, pow:<p>");
  bound->add_option("--format", bound_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bound->add_option("--out", bound_out, "output file (default stdout)");

  // phase
  auto* phase = app.add_subcommand(
      "phase", "homothety vs constructed map across scales");
  double phase_lo = 0.05, phase_hi = 0.95, phase_step = 0.05, phase_p = 2.0;
  int phase_n1 = 64, phase_n2 = 64;
  std::string phase_format = "csv", phase_out;
  phase->add_option("--lambda-min", phase_lo, "smallest scale (default 0.05)");
  phase->add_option("--lambda-max", phase_hi, "largest scale (default 0.95)");
  phase->add_option("--step", phase_step, "scale increment (default 0.05)");
  phase->add_option("--p", phase_p, "distortion exponent (default 2)");
  phase->add_option("--n1", phase_n1, "radial subdivisions (default 64)");
  phase->add_option("--n2", phase_n2, "angular subdivisions (default 64)");
  phase->add_option("--format", phase_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  phase->add_option("--out", phase_out, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "randomized inequality suites (exit 2 on violations)");
  std::string verify_suite = "all";
  int verify_samples = 100000;
  std::uint64_t verify_seed = swell::kDefaultSeed;
  {
    auto names = swell::verify_suite_names();
    names.push_back("all");
    verify->add_option("--suite", verify_suite, "suite name or all")
        ->check(CLI::IsMember(names));
  }
  verify->add_option("--samples", verify_samples,
                     "samples per suite (default 100000)");
  verify->add_option("--seed", verify_seed, "rng seed");

  // construct twist | ode
  auto* construct =
      app.add_subcommand("construct", "build and export a minimizer");
  construct->require_subcommand(1);
  auto* ctwist = construct->add_subcommand(
      "twist", "constant-stretch twist at a given scale");
  double ct_lambda = 0.0, ct_p = 2.0;
  int ct_n1 = 64, ct_n2 = 64, ct_samples = 256;
  bool ct_svg = false;
  std::string ct_out_dir = ".";
  ctwist->add_option("--lambda", ct_lambda, "scale in (0, 1/2]")->required();
  ctwist->add_option("--p", ct_p, "distortion exponent (default 2)");
  ctwist->add_option("--n1", ct_n1, "radial subdivisions (default 64)");
  ctwist->add_option("--n2", ct_n2, "angular subdivisions (default 64)");
  ctwist->add_option("--samples", ct_samples,
                     "profile table rows (default 256)");
  ctwist->add_flag("--svg", ct_svg, "also export the image shape");
  ctwist->add_option("--out-dir", ct_out_dir,
                     "directory for the exported files (default .)");

  auto* code = construct->add_subcommand(
      "ode", "area-preserving disk self-map with constant stretch sum");
  double co_alpha = 0.0, co_p = 2.0;
  std::optional<double> co_t0;
  int co_n1 = 1024, co_n2 = 16, co_samples = 256;
  bool co_svg = false;
  std::string co_out_dir = ".";
  code->add_option("--alpha", co_alpha, "singular-value sum, must exceed 2")
      ->required();
  code->add_option("--t0", co_t0, "plateau radius (default 1/alpha)");
  code->add_option("--p", co_p, "distortion exponent (default 2)");
  code->add_option("--n1", co_n1, "radial subdivisions (default 1024)");
  code->add_option("--n2", co_n2, "angular subdivisions (default 16)");
  code->add_option("--samples", co_samples,
                   "profile table rows (default 256)");
  code->add_flag("--svg", co_svg, "also export the rescaled image shape");
  code->add_option("--out-dir", co_out_dir,
                   "directory for the exported files (default .)");

  // critical
  auto* critical = app.add_subcommand(
      "critical", "lattice divergence residuals under refinement");
  std::string cr_map, cr_mode = "analytic", cr_out;
  std::vector<double> cr_p = {2.0};
  std::vector<int> cr_levels = {16, 32, 64};
  bool cr_piola = false;
  critical
      ->add_option("--map", cr_map,
                   "twist:<lambda>, ode:<alpha>, poly:1 or poly:2")
      ->required();
  critical->add_option("--p", cr_p, "distortion exponents (comma separated)")
      ->delimiter(',');
  critical
      ->add_option("--levels", cr_levels,
                   "inverse spacings, h = 1/level (comma separated)")
      ->delimiter(',');
  critical->add_flag("--piola", cr_piola,
                     "check the cofactor field instead of the stress");
  critical->add_option("--mode", cr_mode, "analytic or fd differentials")
      ->check(CLI::IsMember({"analytic", "fd"}));
  critical->add_option("--out", cr_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e);
    return code_ == 0 ? 0 : 1;
  }

  try {
    if (bound->parsed()) {
      return run_bound(bound_s, bound_p, bound_cost, bound_format, bound_out);
    }
    if (phase->parsed()) {
      return run_phase(phase_lo, phase_hi, phase_step, phase_p, phase_n1,
                       phase_n2, phase_format, phase_out);
    }
    if (verify->parsed()) {
      return run_verify(verify_suite, verify_samples, verify_seed);
    }
    if (construct->parsed()) {
      if (ctwist->parsed()) {
        return run_construct_twist(ct_lambda, ct_p, ct_n1, ct_n2, ct_samples,
                                   ct_svg, ct_out_dir);
      }
      return run_construct_ode(co_alpha, co_t0, co_p, co_n1, co_n2,
                               co_samples, co_svg, co_out_dir);
    }
    if (critical->parsed()) {
      return run_critical(cr_map, cr_p, cr_levels, cr_piola, cr_mode, cr_out);
    }
  } catch (const swell::ConstructionError& e) {
    std::fprintf(stderr, "construction failed: %s\n", e.what());
    return 3;
  } catch (const swell::DomainError& e) {
    std::fprintf(stderr, "bad argument: %s\n", e.what());
    return 1;
  } catch (const swell::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
