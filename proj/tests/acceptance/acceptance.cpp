// End-to-end acceptance run: one PASS/FAIL line per criterion, exit 0 only
// when every criterion holds.

#include "gburgers/coeff.hpp"
#include "gburgers/errors.hpp"
#include "gburgers/fd_oracle.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/invariants.hpp"
#include "gburgers/io.hpp"
#include "gburgers/kernel.hpp"
#include "gburgers/mild_solver.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace gb;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

SolverConfig desk_config(int nx) {
  SolverConfig cfg;
  cfg.grid.L = 2.0;
  cfg.grid.nx = nx;
  return cfg; // remaining knobs keep their production defaults
}

void criterion_1_kernel_identities() {
  double worst_mass = 0.0, worst_gs = 0.0, worst_gss = 0.0;
  for (double dt : {1e-4, 1e-2, 1.0, 1e2}) {
    worst_mass = std::max(worst_mass, std::abs(integral_G(dt) - 1.0));
    worst_gs = std::max(worst_gs, std::abs(integral_absGs(dt) * std::sqrt(M_PI * dt) - 1.0));
    worst_gss = std::max(worst_gss, std::abs(integral_Gss_signed_and_abs(dt).signed_value));
  }
  const bool ok = worst_mass <= 1e-10 && worst_gs <= 1e-7 && worst_gss <= 1e-8;
  report(1, ok, "kernel identities across dt in {1e-4, 1e-2, 1, 1e2}",
         "mass " + fmt(worst_mass) + ", |Gs| " + fmt(worst_gs) + ", Gss " + fmt(worst_gss));
}

void criterion_2_holder_fits() {
  bool ok = true;
  double worst = 0.0;
  for (double beta : {0.25, 0.5, 0.75}) {
    const HolderFit a = fit_holder_constants(beta, 500, {}, 42);
    const HolderFit b = fit_holder_constants(beta, 1000, {}, 43);
    for (std::size_t i = 0; i < 6; ++i) {
      const double va = a.as_array()[i];
      const double vb = b.as_array()[i];
      if (!std::isfinite(vb) || vb <= 0.0) ok = false;
      const double rel = std::abs(va - vb) / std::max(va, vb);
      worst = std::max(worst, rel);
    }
  }
  ok = ok && worst <= 0.20;
  report(2, ok, "Holder difference-bound constants finite and sample-stable",
         "max relative change " + fmt(worst));
}

// One certified Riemann patch at desk resolution, reused by later criteria.
SolutionPatch solve_riemann_patch() {
  Coefficient c(1.0);
  return solve_local(InitialData::step(-1.0, 1.0), 0.0, c, desk_config(1025));
}

void criterion_3_contraction(const SolutionPatch& patch) {
  bool ok = patch.iterations <= 40;
  const double floor = 100.0 * 1e-8;
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < patch.residual_history.size(); ++i) {
    const double prev = patch.residual_history[i - 1];
    const double cur = patch.residual_history[i];
    if (prev > floor && cur > floor) worst_ratio = std::max(worst_ratio, cur / prev);
  }
  ok = ok && worst_ratio <= 0.55 && patch.residual_history.back() <= 1e-8;
  report(3, ok, "Picard contraction certificate within the certified step",
         "iterations " + std::to_string(patch.iterations) + ", worst ratio " + fmt(worst_ratio));
}

void criterion_4_constant_fixed_point() {
  Coefficient c(1.0);
  SolutionPatch patch = solve_local(InitialData::step(0.7, 0.7), 0.0, c, desk_config(1025));
  double dev = 0.0;
  for (const Field& f : patch.fields)
    for (double v : f.values) dev = std::max(dev, std::abs(v - 0.7));
  report(4, dev <= 1e-12, "constant data reproduced exactly", "deviation " + fmt(dev));
}

double mild_vs_fd_sup(int mild_nx, int fd_nx, double T, const std::vector<double>& times) {
  Coefficient c(1.0);
  InitialData d = InitialData::step(-1.0, 1.0);
  SolverConfig cfg = desk_config(mild_nx);
  cfg.report_times = times;
  std::vector<SolutionPatch> mild = solve_global(d, T, c, cfg);
  FdConfig fc;
  fc.nx = fd_nx;
  std::vector<Field> fd = solve_fd(d, T, c, fc, times);
  return compare(mild, fd).max_sup();
}

void criterion_5_cross_solver() {
  const double t_star = certified_step(1.0, Coefficient(1.0));
  const double T = 2.0 * t_star;
  const std::vector<double> times{t_star, T};
  const double coarse = mild_vs_fd_sup(1025, 1024, T, times);
  const double fine = mild_vs_fd_sup(2049, 2048, T, times);
  const bool ok = coarse <= 1e-3 && coarse / fine >= 3.0;
  report(5, ok, "mild and finite-difference solvers agree and converge together",
         "sup " + fmt(coarse) + " -> " + fmt(fine) + " under joint dx halving");
}

void criterion_6_max_principle(const SolutionPatch& patch) {
  std::vector<SolutionPatch> sol{patch};
  InitialData d = InitialData::step(-1.0, 1.0);
  const InvariantReport good = check_max_principle(sol, d);

  std::vector<SolutionPatch> bad = sol;
  bad[0].fields[2].values[500] = -1.5; // injected violation must be caught
  const InvariantReport control = check_max_principle(bad, d);

  const bool ok = good.status == CheckStatus::pass && control.status == CheckStatus::fail;
  report(6, ok, "max principle with a failing negative control",
         "range [" + fmt(good.measured[0].second) + ", " + fmt(good.measured[1].second) + "]");
}

void criterion_7_monotonicity(const SolutionPatch& patch) {
  Coefficient c(1.0);
  const std::vector<SolutionPatch> up{patch};
  const InvariantReport rep_up = check_monotonicity(up, InitialData::step(-1.0, 1.0));

  SolutionPatch down_patch =
      solve_local(InitialData::step(1.0, -1.0), 0.0, c, desk_config(513));
  const std::vector<SolutionPatch> down{down_patch};
  const InvariantReport rep_down = check_monotonicity(down, InitialData::step(1.0, -1.0));

  const bool ok = rep_up.status == CheckStatus::pass && rep_down.status == CheckStatus::pass;
  report(7, ok, "strict monotonicity for both step orientations",
         "worst signed forward differences " + fmt(rep_up.measured[0].second) + " / " +
             fmt(rep_down.measured[0].second));
}

void criterion_8_far_field(const SolutionPatch& patch) {
  std::vector<SolutionPatch> sol{patch};
  const InvariantReport rep =
      check_far_field(sol, InitialData::step(-1.0, 1.0), {1.0, 1.4, 1.8});
  report(8, rep.status == CheckStatus::pass,
         "far-field deviation under the Gaussian tail, improving outward",
         "dev at probes " + fmt(rep.measured[0].second) + ", " + fmt(rep.measured[1].second) +
             ", " + fmt(rep.measured[2].second));
}

void criterion_9_decay_rates() {
  Coefficient c(1.0);
  InitialData d = InitialData::step(-1.0, 1.0);
  const double T = 0.15;
  std::vector<double> fit_times;
  for (int k = 0; k < 6; ++k)
    fit_times.push_back(0.004 * std::pow(0.145 / 0.004, k / 5.0));
  SolverConfig cfg = desk_config(1025);
  for (double t : fit_times)
    for (double f : {0.98, 1.0, 1.02}) cfg.report_times.push_back(t * f);
  std::vector<SolutionPatch> sol = solve_global(d, T, c, cfg);
  DerivativeDecay dec = fit_derivative_decay(sol, c, fit_times);
  const bool ok = dec.report.status == CheckStatus::pass;
  report(9, ok, "derivative decay exponents with agreeing u_t estimators",
         "ux " + fmt(dec.ux.fitted_exponent) + ", uxx " + fmt(dec.uxx.fitted_exponent) +
             ", ut " + fmt(dec.ut.fitted_exponent) + ", two-way " +
             fmt(dec.ut_two_way_max_rel_diff) + ", min r2 " +
             fmt(std::min({dec.ux.r_squared, dec.uxx.r_squared, dec.ut.r_squared})));
}

void criterion_10_small_time() {
  // The O(t) approach to the heat semigroup holds uniformly where the data
  // is continuous; across a jump the transition layer only closes like
  // sqrt(t), so the condition is probed with smooth data.
  Coefficient c(1.0);
  auto fn = [](double x) { return std::tanh(2.0 * x); };
  InitialData d = InitialData::smooth(fn, -1.0, 1.0, -1.0, 1.0);
  SolverConfig cfg = desk_config(513);
  SolutionPatch patch = solve_local(d, 0.0, c, cfg);
  std::vector<double> ts, sups;
  for (const Field& f : patch.fields) {
    if (f.t < 1e-4) continue;
    double sup = 0.0;
    for (int i = 0; i < f.size(); ++i)
      sup = std::max(sup, std::abs(f.values[static_cast<std::size_t>(i)] -
                                   d.heat_convolution(f.x(i), f.t, cfg.quad)));
    ts.push_back(f.t);
    sups.push_back(sup);
  }
  RateFit fit = fit_loglog(ts, sups);
  const bool ok = fit.fitted_exponent >= 0.9;
  report(10, ok, "small-time approach to the heat semigroup",
         "exponent " + fmt(fit.fitted_exponent) + ", r2 " + fmt(fit.r_squared));
}

void criterion_11_continuous_dependence() {
  Coefficient c(1.0);
  SolverConfig cfg = desk_config(513);
  cfg.base_slices = 16;
  ContinuousDependence cd = continuous_dependence(
      InitialData::step(-1.0, 1.0), InitialData::step(-1.0, 1.01), 0.04, c, cfg);
  const bool ok = cd.report.status == CheckStatus::pass;
  report(11, ok, "continuous dependence stable under gap halving, inside the envelope",
         "max relative deviation " + fmt(cd.max_rel_deviation) + ", envelope excess " +
             fmt(cd.report.measured[2].second));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_12_determinism() {
#ifndef GB_CLI_PATH
  report(12, false, "CLI determinism", "CLI path not configured");
#else
  const fs::path root = fs::temp_directory_path() / "gb_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "config.json";
  {
    std::ofstream out(cfg);
    out << R"({
  "problem": {"alpha": 1.0, "T": 0.01,
              "initial_data": {"type": "step", "u_minus": -1.0, "u_plus": 1.0}},
  "solver": {"nx": 257, "base_slices": 8, "time_panels": 2, "nodes_per_panel": 6,
             "hermite_order": 32},
  "checks": ["max_principle", "holder"]
})";
  }
  bool ok = true;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(GB_CLI_PATH) + " invariants --config " + cfg.string() +
                            " --out " + (root / run).string() + " --seed 123 > /dev/null";
    if (std::system(cmd.c_str()) != 0) ok = false;
  }
  for (const char* file : {"solution.csv", "reports.csv"}) {
    if (slurp(root / "a" / file) != slurp(root / "b" / file) ||
        slurp(root / "a" / file).empty())
      ok = false;
  }
  report(12, ok, "identical CLI runs produce byte-identical CSV artifacts");
#endif
}

} // namespace

int main() {
  try {
    criterion_1_kernel_identities();
    criterion_2_holder_fits();
    const SolutionPatch riemann = solve_riemann_patch();
    criterion_3_contraction(riemann);
    criterion_4_constant_fixed_point();
    criterion_5_cross_solver();
    criterion_6_max_principle(riemann);
    criterion_7_monotonicity(riemann);
    criterion_8_far_field(riemann);
    criterion_9_decay_rates();
    criterion_10_small_time();
    criterion_11_continuous_dependence();
    criterion_12_determinism();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (g_failures == 0 ? "all criteria passed" : "criteria failed: ") << std::flush;
  if (g_failures != 0) std::cout << g_failures;
  std::cout << std::endl;
  return g_failures == 0 ? 0 : 1;
}
