// Command-line front end: solve | verify-kernel | invariants | compare | sweep.

#include "CLI11.hpp"
#include "json.hpp"

#include "gburgers/coeff.hpp"
#include "gburgers/errors.hpp"
#include "gburgers/fd_oracle.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/invariants.hpp"
#include "gburgers/io.hpp"
#include "gburgers/kernel.hpp"
#include "gburgers/mild_solver.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gb;

namespace {

struct RunSetup {
  double alpha = 1.0;
  double T = 0.04;
  InitialData data = InitialData::step(-1.0, 1.0);
  SolverConfig solver;
  FdConfig fd;
  std::vector<std::string> checks;
  double dependence_gap = 0.01;
  std::string output_dir = "out";
};

InitialData parse_initial_data(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "step")
    return InitialData::step(j.at("u_minus").get<double>(), j.at("u_plus").get<double>());
  if (type == "piecewise")
    return InitialData::piecewise(j.at("breakpoints").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>());
  if (type == "tanh") {
    const double a = j.at("amplitude").get<double>();
    const double k = j.value("steepness", 2.0);
    return InitialData::smooth([a, k](double x) { return a * std::tanh(k * x); },
                               -std::abs(a), std::abs(a), -a, a);
  }
  throw ConfigError("unknown initial_data type: " + type);
}

RunSetup parse_config(const json& j) {
  RunSetup s;
  const json& p = j.at("problem");
  s.alpha = p.at("alpha").get<double>();
  s.T = p.at("T").get<double>();
  s.data = parse_initial_data(p.at("initial_data"));

  if (j.contains("solver")) {
    const json& sv = j["solver"];
    s.solver.grid.L = sv.value("L", s.solver.grid.L);
    s.solver.grid.nx = sv.value("nx", s.solver.grid.nx);
    s.solver.picard_tol = sv.value("picard_tol", s.solver.picard_tol);
    s.solver.max_iterations = sv.value("max_iterations", s.solver.max_iterations);
    s.solver.base_slices = sv.value("base_slices", s.solver.base_slices);
    s.solver.time_panels = sv.value("time_panels", s.solver.time_panels);
    s.solver.nodes_per_panel = sv.value("nodes_per_panel", s.solver.nodes_per_panel);
    s.solver.quad.hermite_order = sv.value("hermite_order", s.solver.quad.hermite_order);
    if (sv.contains("report_times"))
      s.solver.report_times = sv["report_times"].get<std::vector<double>>();
  }
  if (j.contains("fd")) {
    const json& f = j["fd"];
    s.fd.L = f.value("L", s.fd.L);
    s.fd.nx = f.value("nx", s.fd.nx);
    s.fd.dt_factor = f.value("dt_factor", s.fd.dt_factor);
    const std::string scheme = f.value("scheme", std::string("explicit"));
    if (scheme == "explicit") s.fd.scheme = FdScheme::explicit_euler;
    else if (scheme == "semi_implicit") s.fd.scheme = FdScheme::semi_implicit;
    else throw ConfigError("unknown fd scheme: " + scheme);
  }
  if (j.contains("checks")) s.checks = j["checks"].get<std::vector<std::string>>();
  if (j.contains("dependence_gap")) s.dependence_gap = j["dependence_gap"].get<double>();
  if (j.contains("output_dir")) s.output_dir = j["output_dir"].get<std::string>();
  s.solver.validate();
  s.fd.validate();
  return s;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  return json::parse(in); // parse errors surface with line/column diagnostics
}

std::vector<double> default_report_times(double T) {
  std::vector<double> ts;
  for (int j = 1; j <= 8; ++j) {
    const double frac = static_cast<double>(j) / 8.0;
    ts.push_back(T * frac * frac);
  }
  return ts;
}

json patch_metadata(const std::vector<SolutionPatch>& sol) {
  json arr = json::array();
  for (const SolutionPatch& p : sol) {
    json jp;
    jp["t0"] = p.t0;
    jp["t_star"] = p.t_star;
    jp["iterations"] = p.iterations;
    jp["final_residual"] = p.residual_history.empty() ? 0.0 : p.residual_history.back();
    jp["residual_history"] = p.residual_history;
    arr.push_back(std::move(jp));
  }
  return arr;
}

void write_metadata(const fs::path& dir, const json& config, std::uint64_t seed,
                    const json& extra) {
  json m;
  m["config"] = config;
  m["seed"] = seed;
  m["run"] = extra;
  std::ofstream out(dir / "metadata.json");
  out << m.dump(2) << '\n';
}

std::vector<const Field*> pick_profiles(const std::vector<const Field*>& fields, std::size_t max_n) {
  if (fields.size() <= max_n) return fields;
  std::vector<const Field*> out;
  for (std::size_t k = 0; k < max_n; ++k)
    out.push_back(fields[k * (fields.size() - 1) / (max_n - 1)]);
  return out;
}

int cmd_solve(const json& config, const fs::path& out_dir, std::uint64_t seed) {
  RunSetup s = parse_config(config);
  if (s.solver.report_times.empty()) s.solver.report_times = default_report_times(s.T);
  Coefficient c(s.alpha);
  std::vector<SolutionPatch> sol = solve_global(s.data, s.T, c, s.solver);
  const auto fields = all_fields(sol);
  write_solution_csv((out_dir / "solution.csv").string(), fields, "mild");
  write_svg_plot((out_dir / "plot.svg").string(), pick_profiles(fields, 6), "u(x, t)");
  json extra;
  extra["command"] = "solve";
  extra["patches"] = patch_metadata(sol);
  write_metadata(out_dir, config, seed, extra);
  return 0;
}

int cmd_verify_kernel(const json& config, const fs::path& out_dir, std::uint64_t seed) {
  std::vector<InvariantReport> reports;
  for (double dt : {1e-4, 1e-2, 1.0, 1e2}) {
    InvariantReport rep;
    rep.name = "kernel_identities_dt_" + format_double(dt);
    const double eg = std::abs(integral_G(dt) - 1.0);
    const double egs = std::abs(integral_absGs(dt) * std::sqrt(M_PI * dt) - 1.0);
    const double egss = std::abs(integral_Gss_signed_and_abs(dt).signed_value);
    rep.measured = {{"mass_defect", eg}, {"absGs_defect", egs}, {"Gss_mean", egss}};
    rep.thresholds = {{"mass_tol", 1e-10}, {"absGs_tol", 1e-7}, {"Gss_tol", 1e-8}};
    rep.status = (eg <= 1e-10 && egs <= 1e-7 && egss <= 1e-8) ? CheckStatus::pass
                                                              : CheckStatus::fail;
    reports.push_back(std::move(rep));
  }
  for (double beta : {0.25, 0.5, 0.75}) {
    InvariantReport rep;
    rep.name = "holder_constants_beta_" + format_double(beta);
    const HolderFit a = fit_holder_constants(beta, 400, {}, seed);
    const HolderFit b = fit_holder_constants(beta, 800, {}, seed + 1);
    rep.status = CheckStatus::pass;
    const auto& names = HolderFit::names();
    for (std::size_t i = 0; i < 6; ++i) {
      const double va = a.as_array()[i];
      const double vb = b.as_array()[i];
      const double rel = std::abs(va - vb) / std::max(va, vb);
      rep.measured.emplace_back(names[i], vb);
      rep.measured.emplace_back(std::string(names[i]) + "_rel_change", rel);
      if (!std::isfinite(vb) || rel > 0.20) rep.status = CheckStatus::fail;
    }
    rep.thresholds = {{"stability", 0.20}};
    reports.push_back(std::move(rep));
  }
  write_reports_csv((out_dir / "kernel_report.csv").string(), reports);
  json extra;
  extra["command"] = "verify-kernel";
  write_metadata(out_dir, config, seed, extra);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.name << ": " << InvariantReport::status_name(r.status) << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

std::vector<InvariantReport> run_invariants(const RunSetup& s, std::uint64_t seed,
                                            const std::string& only,
                                            std::vector<SolutionPatch>& sol_out) {
  Coefficient c(s.alpha);
  std::vector<std::string> checks = s.checks;
  if (!checks.empty() && !only.empty()) {
    checks.clear();
    checks.push_back(only);
  } else if (checks.empty()) {
    checks = {"max_principle", "monotonicity", "far_field", "holder", "pde_residual"};
    if (!only.empty()) checks = {only};
  }

  SolverConfig cfg = s.solver;
  if (cfg.report_times.empty()) cfg.report_times = default_report_times(s.T);
  const double t_eval = 0.75 * s.T;
  for (double f : {0.995, 1.0, 1.005}) cfg.report_times.push_back(t_eval * f);
  sol_out = solve_global(s.data, s.T, c, cfg);

  std::vector<InvariantReport> reports;
  for (const std::string& name : checks) {
    if (name == "max_principle") {
      reports.push_back(check_max_principle(sol_out, s.data));
    } else if (name == "monotonicity") {
      reports.push_back(check_monotonicity(sol_out, s.data));
    } else if (name == "far_field") {
      const double L = cfg.grid.L;
      reports.push_back(check_far_field(sol_out, s.data, {0.5 * L, 0.7 * L, 0.9 * L}));
    } else if (name == "holder") {
      for (double beta : {0.25, 0.5, 0.75}) {
        InvariantReport rep = check_holder(sol_out, beta, 2000, seed);
        rep.name += "_beta_" + format_double(beta);
        reports.push_back(std::move(rep));
      }
    } else if (name == "pde_residual") {
      reports.push_back(pde_residual(sol_out, c, t_eval).report);
    } else if (name == "continuous_dependence") {
      const InitialData::Step* st = s.data.as_step();
      if (!st) {
        InvariantReport rep;
        rep.name = "continuous_dependence";
        rep.status = CheckStatus::not_applicable;
        rep.details = "perturbation probe needs step data";
        reports.push_back(std::move(rep));
      } else {
        InitialData shifted = InitialData::step(st->u_minus, st->u_plus + s.dependence_gap);
        reports.push_back(continuous_dependence(s.data, shifted, s.T, c, s.solver).report);
      }
    } else {
      throw ConfigError("unknown check: " + name);
    }
  }
  return reports;
}

int cmd_invariants(const json& config, const fs::path& out_dir, std::uint64_t seed,
                   const std::string& only) {
  RunSetup s = parse_config(config);
  std::vector<SolutionPatch> sol;
  std::vector<InvariantReport> reports = run_invariants(s, seed, only, sol);
  write_reports_csv((out_dir / "reports.csv").string(), reports);
  write_solution_csv((out_dir / "solution.csv").string(), all_fields(sol), "mild");
  json extra;
  extra["command"] = "invariants";
  extra["patches"] = patch_metadata(sol);
  write_metadata(out_dir, config, seed, extra);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.name << ": " << InvariantReport::status_name(r.status) << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

int cmd_compare(const json& config, const fs::path& out_dir, std::uint64_t seed) {
  RunSetup s = parse_config(config);
  Coefficient c(s.alpha);
  SolverConfig cfg = s.solver;
  if (cfg.report_times.empty()) cfg.report_times = {0.5 * s.T, s.T};
  std::vector<SolutionPatch> mild = solve_global(s.data, s.T, c, cfg);
  std::vector<Field> fd = solve_fd(s.data, s.T, c, s.fd, cfg.report_times);
  DiscrepancyReport disc = compare(mild, fd);

  std::vector<InvariantReport> reports;
  InvariantReport agree;
  agree.name = "cross_solver_agreement";
  for (std::size_t i = 0; i < disc.times.size(); ++i) {
    agree.measured.emplace_back("sup_at_" + format_double(disc.times[i]), disc.sup[i]);
    agree.measured.emplace_back("l2_at_" + format_double(disc.times[i]), disc.l2[i]);
  }
  agree.thresholds = {{"sup_tol", 1e-3}};
  agree.status = disc.max_sup() <= 1e-3 ? CheckStatus::pass : CheckStatus::fail;
  reports.push_back(std::move(agree));

  InvariantReport order;
  order.name = "fd_convergence_order";
  const double p = fd_convergence_order(s.data, std::min(s.T, 0.05), c, s.fd);
  // explicit marching has dt ~ dx^2, so the error is second order in dx;
  // the semi-implicit variant keeps dt ~ dx and its time error is first order
  const double min_order = s.fd.scheme == FdScheme::explicit_euler ? 1.8 : 0.9;
  order.measured = {{"order", p}};
  order.thresholds = {{"min_order", min_order}};
  order.status = p >= min_order ? CheckStatus::pass : CheckStatus::fail;
  reports.push_back(std::move(order));

  write_reports_csv((out_dir / "reports.csv").string(), reports);
  write_solution_csv((out_dir / "solution_mild.csv").string(), all_fields(mild), "mild");
  std::vector<const Field*> fdp;
  for (const Field& f : fd) fdp.push_back(&f);
  write_solution_csv((out_dir / "solution_fd.csv").string(), fdp, "fd");
  json extra;
  extra["command"] = "compare";
  extra["patches"] = patch_metadata(mild);
  extra["max_sup_discrepancy"] = disc.max_sup();
  extra["fd_order"] = p;
  write_metadata(out_dir, config, seed, extra);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.name << ": " << InvariantReport::status_name(r.status) << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

int cmd_sweep(const json& config, const fs::path& out_dir, std::uint64_t seed,
              const std::string& only) {
  std::vector<double> alphas{0.5, 1.0, 2.0};
  if (config.contains("sweep") && config["sweep"].contains("alphas"))
    alphas = config["sweep"]["alphas"].get<std::vector<double>>();

  std::ofstream agg(out_dir / "sweep.csv");
  agg << "alpha,check,status,quantity,measured\n";
  bool ok = true;
  for (double alpha : alphas) {
    json sub = config;
    sub["problem"]["alpha"] = alpha;
    RunSetup s = parse_config(sub);
    const fs::path dir = out_dir / ("alpha_" + format_double(alpha));
    fs::create_directories(dir);
    std::vector<SolutionPatch> sol;
    std::vector<InvariantReport> reports = run_invariants(s, seed, only, sol);
    write_reports_csv((dir / "reports.csv").string(), reports);
    for (const auto& r : reports) {
      ok = ok && r.passed();
      if (r.measured.empty()) {
        agg << format_double(alpha) << ',' << r.name << ','
            << InvariantReport::status_name(r.status) << ",,\n";
        continue;
      }
      for (const auto& [qname, val] : r.measured)
        agg << format_double(alpha) << ',' << r.name << ','
            << InvariantReport::status_name(r.status) << ',' << qname << ','
            << format_double(val) << '\n';
      std::cout << "alpha=" << alpha << ' ' << r.name << ": "
                << InvariantReport::status_name(r.status) << '\n';
    }
  }
  json extra;
  extra["command"] = "sweep";
  extra["alphas"] = alphas;
  write_metadata(out_dir, config, seed, extra);
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified mild-solution solver for a generalized Burgers equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_arg = "out";
  std::string check_name;
  std::uint64_t seed = 7;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON configuration file");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir_arg, "output directory");
    sub->add_option("--seed", seed, "seed of the randomized checks");
    sub->add_option("--check", check_name, "run a single named check");
  };

  CLI::App* c_solve = app.add_subcommand("solve", "solve and write profiles");
  CLI::App* c_kernel = app.add_subcommand("verify-kernel", "kernel identity and bound checks");
  CLI::App* c_inv = app.add_subcommand("invariants", "solve and check solution properties");
  CLI::App* c_cmp = app.add_subcommand("compare", "mild solver against the finite-difference march");
  CLI::App* c_sweep = app.add_subcommand("sweep", "invariants across a coefficient sweep");
  add_common(c_solve, true);
  add_common(c_kernel, false);
  add_common(c_inv, true);
  add_common(c_cmp, true);
  add_common(c_sweep, true);

  CLI11_PARSE(app, argc, argv);

  try {
    json config = json::object();
    if (!config_path.empty()) config = load_json(config_path);
    fs::path out_dir = out_dir_arg;
    if (config.contains("output_dir") && out_dir_arg == "out")
      out_dir = config["output_dir"].get<std::string>();
    // validate before creating any output
    if (app.got_subcommand(c_solve) || app.got_subcommand(c_inv) || app.got_subcommand(c_cmp))
      parse_config(config);
    fs::create_directories(out_dir);

    if (app.got_subcommand(c_solve)) return cmd_solve(config, out_dir, seed);
    if (app.got_subcommand(c_kernel)) return cmd_verify_kernel(config, out_dir, seed);
    if (app.got_subcommand(c_inv)) return cmd_invariants(config, out_dir, seed, check_name);
    if (app.got_subcommand(c_cmp)) return cmd_compare(config, out_dir, seed);
    if (app.got_subcommand(c_sweep)) return cmd_sweep(config, out_dir, seed, check_name);
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
