// kkflow: command-line driver for the Keyfitz-Kranzer upwind schemes.
//
//   kkflow run         --preset exp2-1 --scheme split-polar --out exp2
//   kkflow convergence --preset table1 --scheme coupled --levels 5..10
//   kkflow experiment  exp1a
//   kkflow validate
//
// Exit codes: 0 success, 1 solver or I/O failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kkflow/kkflow.hpp"

namespace {

using namespace kkflow;

struct Options {
  std::string preset;
  std::string scheme = "coupled";
  std::string levels = "5..10";
  std::string out;
  std::vector<double> domain{-1.0, 39.0};
  std::size_t cells = 1024;
  double cfl = 0.75;
  double tend = 1.0;
  std::vector<std::string> riemann{"1,1", "3,1"};
  std::string phi = "power:2";
  std::string bc = "zero-gradient";
  std::string integrator = "euler";
  bool strict_cfl = false;
};

struct Flags {
  CLI::Option* preset = nullptr;
  CLI::Option* scheme = nullptr;
  CLI::Option* domain = nullptr;
  CLI::Option* cells = nullptr;
  CLI::Option* cfl = nullptr;
  CLI::Option* tend = nullptr;
  CLI::Option* riemann = nullptr;
  CLI::Option* phi = nullptr;
  CLI::Option* bc = nullptr;
  CLI::Option* integrator = nullptr;
  CLI::Option* strict = nullptr;
};

double parse_power(const std::string& spec) {
  if (spec.rfind("power:", 0) != 0) throw CLI::ValidationError("--phi", "expected power:P, got '" + spec + "'");
  try {
    std::size_t used = 0;
    const double p = std::stod(spec.substr(6), &used);
    if (used != spec.size() - 6 || !(p >= 1.0)) throw std::invalid_argument("p");
    return p;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--phi", "power exponent must be a number >= 1, got '" + spec + "'");
  }
}

State parse_vector(const std::string& text) {
  State v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--riemann", "cannot parse vector '" + text + "'");
    }
  }
  if (v.empty()) throw CLI::ValidationError("--riemann", "empty vector");
  return v;
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument(text);
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (a < 0 || b < a || b > 24) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--levels", "expected A..B with 0 <= A <= B <= 24, got '" + text + "'");
  }
}

Flags add_config_flags(CLI::App* app, Options& o, bool with_preset) {
  Flags f;
  if (with_preset) {
    f.preset = app->add_option("--preset", o.preset, "Start from a named reference set-up")
                   ->check(CLI::IsMember(preset_names()));
  }
  f.scheme = app->add_option("--scheme", o.scheme, "coupled | split-cons | split-polar | semi | semi-heun")
                 ->check(CLI::IsMember(scheme_names()))
                 ->capture_default_str();
  f.domain = app->add_option("--domain", o.domain, "Domain end points A B")->expected(2)->capture_default_str();
  f.cells = app->add_option("--cells", o.cells, "Number of cells J")->check(CLI::PositiveNumber)->capture_default_str();
  f.cfl = app->add_option("--cfl", o.cfl, "CFL number in (0, 1]")->check(CLI::Range(1e-12, 1.0))->capture_default_str();
  f.tend = app->add_option("--tend", o.tend, "Final time")->check(CLI::NonNegativeNumber)->capture_default_str();
  f.riemann = app->add_option("--riemann", o.riemann, "Riemann states, e.g. 1,1 3,1")
                  ->expected(2)
                  ->capture_default_str();
  f.phi = app->add_option("--phi", o.phi, "Nonlinearity, power:P for phi(r) = r^P")->capture_default_str();
  f.bc = app->add_option("--bc", o.bc, "Boundary policy")
             ->check(CLI::IsMember({"zero-gradient", "periodic"}))
             ->capture_default_str();
  f.integrator = app->add_option("--integrator", o.integrator, "ODE integrator for the semi scheme")
                     ->check(CLI::IsMember({"euler", "heun"}))
                     ->capture_default_str();
  f.strict = app->add_flag("--strict-cfl", o.strict_cfl, "Also cap dt by the L2-stability restriction")
                 ->capture_default_str();
  return f;
}

RunConfig resolve(const Options& o, const Flags& f, const std::string& preset_name) {
  RunConfig c;
  const bool from_preset = !preset_name.empty();
  if (from_preset) {
    c = preset(preset_name);
  } else {
    c.grid = Grid1D(-1.0, 39.0, 1024);
    c.t_end = 1.0;
  }
  // With a preset, only flags given on the command line override it.
  const auto given = [](const CLI::Option* opt) { return opt && opt->count() > 0; };
  const auto use = [&](const CLI::Option* opt) { return !from_preset || given(opt); };

  if (use(f.scheme)) {
    SchemeKind kind = *parse_scheme(o.scheme);
    if (auto* semi = std::get_if<scheme::SemiDiscrete>(&kind); semi && o.integrator == "heun") {
      semi->integrator = Integrator::Heun;
    }
    c.scheme = kind;
  }
  if (use(f.domain) || use(f.cells)) {
    const double a = use(f.domain) ? o.domain[0] : c.grid.x_min();
    const double b = use(f.domain) ? o.domain[1] : c.grid.x_max();
    const std::size_t cells = use(f.cells) ? o.cells : c.grid.num_cells();
    if (!(b > a)) throw CLI::ValidationError("--domain", "expected A < B");
    c.grid = Grid1D(a, b, cells);
  }
  if (use(f.tend)) {
    c.t_end = o.tend;
    std::vector<double> kept;
    for (double t : c.output_times) {
      if (t < o.tend) kept.push_back(t);
    }
    kept.push_back(o.tend);
    c.output_times = kept;
  }
  if (!from_preset) c.output_times = c.t_end > 0.0 ? std::vector<double>{0.0, c.t_end} : std::vector<double>{0.0};
  if (use(f.riemann)) {
    RiemannData d{parse_vector(o.riemann[0]), parse_vector(o.riemann[1]), 0.0};
    if (d.u_left.size() != d.u_right.size()) throw CLI::ValidationError("--riemann", "states differ in length");
    c.initial = d;
  }
  if (use(f.phi)) c.model = PhiModel::power_law(parse_power(o.phi), 1.0);
  if (use(f.bc)) c.bc = o.bc == "periodic" ? BoundaryPolicy::Periodic : BoundaryPolicy::ZeroGradient;
  if (use(f.cfl)) c.cfl.cfl_number = o.cfl;
  fit_r_max(c);
  if (o.strict_cfl) c.cfl = strict_cfl(c.model, c.cfl.cfl_number);
  return c;
}

void print_report(const ConvergenceReport& rep) {
  std::printf("%4s %14s %10s %8s\n", "N", "dx", "E(%)", "rate");
  for (const auto& row : rep.rows) {
    if (row.failure) {
      std::printf("%4d %14.6e %10s %8s  (%s)\n", row.level, row.dx, "failed", "", row.failure->c_str());
      continue;
    }
    if (row.rate) {
      std::printf("%4d %14.6e %10.4f %8.3f\n", row.level, row.dx, row.error, *row.rate);
    } else {
      std::printf("%4d %14.6e %10.4f %8s\n", row.level, row.dx, row.error, "");
    }
  }
}

int cmd_run(const RunConfig& c, const std::string& out) {
  const Trajectory traj = advance(c);
  for (const auto& path : write_csv(c.grid, traj, out)) std::cout << path << '\n';
  if (traj.warnings() > 0) std::cerr << "warning: max principle breached on " << traj.warnings() << " steps\n";
  return 0;
}

int cmd_experiment(const RunConfig& c, const std::string& out) {
  const Trajectory traj = advance(c);
  for (const auto& path : write_csv(c.grid, traj, out)) std::cout << path << '\n';
  for (const auto& snap : traj.snapshots) {
    if (snap.t == 0.0) continue;
    const auto exact = exact_solution(c, snap.t);
    if (!exact) continue;
    std::printf("t = %s  E = %.4f%%\n", time_label(snap.t).c_str(), relative_error(snap.u, *exact));
  }
  return 0;
}

int cmd_validate(const Options& o) {
  int failures = 0;
  const PhiModel model = PhiModel::power_law(parse_power(o.phi), 4.0);
  const ValidationReport rep = validate_phi(model, 1000);
  std::printf("phi %-12s %s\n", o.phi.c_str(), rep.passed() ? "ok" : "FAILED");
  for (const auto& v : rep.violations) {
    std::printf("  %s: %s at r = %g\n", v.assumption.c_str(), v.condition.c_str(), v.r);
  }
  failures += rep.passed() ? 0 : 1;
  for (const auto& name : preset_names()) {
    const auto problems = check_config(preset(name));
    std::printf("preset %-9s %s\n", name.c_str(), problems.empty() ? "ok" : "FAILED");
    for (const auto& p : problems) std::printf("  %s\n", p.c_str());
    failures += problems.empty() ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upwind schemes for the symmetric Keyfitz-Kranzer system"};
  app.require_subcommand(1);

  Options run_opt;
  auto* run = app.add_subcommand("run", "Advance one configuration and write CSV snapshots");
  const Flags run_flags = add_config_flags(run, run_opt, true);
  run_opt.out = "run";
  run->add_option("--out", run_opt.out, "Output prefix; files are <out>_t<time>.csv")->capture_default_str();

  Options conv_opt;
  conv_opt.preset = "table1";
  auto* conv = app.add_subcommand("convergence", "Grid-refinement study against the exact solution");
  const Flags conv_flags = add_config_flags(conv, conv_opt, true);
  conv_flags.preset->capture_default_str();
  conv->add_option("--levels", conv_opt.levels, "Levels A..B; level N uses 2^N cells")->capture_default_str();
  conv->add_option("--out", conv_opt.out, "Write the report as CSV to this path");

  Options exp_opt;
  std::string exp_name;
  auto* exp = app.add_subcommand("experiment", "Run a reference set-up end to end and report its error");
  exp->add_option("name", exp_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
  const Flags exp_flags = add_config_flags(exp, exp_opt, false);
  exp->add_option("--out", exp_opt.out, "Output prefix (default: the preset name)");

  Options val_opt;
  auto* val = app.add_subcommand("validate", "Check phi against the model assumptions and every preset");
  val->add_option("--phi", val_opt.phi, "Nonlinearity, power:P")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(resolve(run_opt, run_flags, run_opt.preset), run_opt.out);
    if (conv->parsed()) {
      const auto [a, b] = parse_levels(conv_opt.levels);
      const ConvergenceReport rep = convergence_study(resolve(conv_opt, conv_flags, conv_opt.preset), a, b);
      print_report(rep);
      if (!conv_opt.out.empty()) write_csv(rep, conv_opt.out);
      return 0;
    }
    if (exp->parsed()) {
      return cmd_experiment(resolve(exp_opt, exp_flags, exp_name), exp_opt.out.empty() ? exp_name : exp_opt.out);
    }
    if (val->parsed()) return cmd_validate(val_opt);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const kkflow::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
