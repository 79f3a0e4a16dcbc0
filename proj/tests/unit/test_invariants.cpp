#include "doctest.h"

#include "gburgers/errors.hpp"
#include "gburgers/invariants.hpp"

#include <cmath>

using namespace gb;

namespace {

const Coefficient kCoeff(1.0);

SolverConfig shared_config() {
  SolverConfig cfg;
  cfg.grid.L = 2.0;
  cfg.grid.nx = 513;
  cfg.base_slices = 12;
  cfg.time_panels = 3;
  cfg.nodes_per_panel = 8;
  cfg.quad.hermite_order = 48;
  cfg.report_times = {0.015 * 0.995, 0.015, 0.015 * 1.005};
  return cfg;
}

// One Riemann solve shared by the checks below.
const std::vector<SolutionPatch>& riemann_solution() {
  static const std::vector<SolutionPatch> sol =
      solve_global(InitialData::step(-1.0, 1.0), certified_step(1.0, kCoeff), kCoeff,
                   shared_config());
  return sol;
}

// Synthetic pure-heat profiles of a step: the exact rates are -1/2 and -1.
std::vector<SolutionPatch> synthetic_heat_patches(const std::vector<double>& times) {
  InitialData d = InitialData::step(-1.0, 1.0);
  GridSpec g;
  g.L = 2.0;
  g.nx = 1025;
  SolutionPatch p;
  p.t0 = 0.0;
  p.t_star = times.back();
  for (double t : times) {
    Field f;
    f.t = t;
    f.x0 = -g.L;
    f.dx = g.dx();
    f.far_left = -1.0;
    f.far_right = 1.0;
    f.values.resize(static_cast<std::size_t>(g.nx));
    for (int i = 0; i < g.nx; ++i)
      f.values[static_cast<std::size_t>(i)] = d.heat_convolution(g.x(i), t);
    p.fields.push_back(std::move(f));
  }
  return {std::move(p)};
}

} // namespace

TEST_CASE("fit_loglog recovers an exact power law") {
  std::vector<double> ts{0.01, 0.04, 0.1, 0.5, 1.0};
  std::vector<double> ns;
  for (double t : ts) ns.push_back(3.0 * std::pow(t, -0.5));
  RateFit fit = fit_loglog(ts, ns);
  CHECK(fit.fitted_exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.fitted_constant == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0, -1.0}, {1.0, 2.0, 3.0}), ConfigError);
}

TEST_CASE("max principle holds, and an injected violation is caught") {
  const auto& sol = riemann_solution();
  InitialData d = InitialData::step(-1.0, 1.0);
  InvariantReport rep = check_max_principle(sol, d);
  CHECK(rep.status == CheckStatus::pass);

  std::vector<SolutionPatch> bad = sol;
  bad[0].fields[3].values[100] = 1.5;
  CHECK(check_max_principle(bad, d).status == CheckStatus::fail);
}

TEST_CASE("monotonicity for increasing and decreasing steps") {
  const auto& sol = riemann_solution();
  InitialData d = InitialData::step(-1.0, 1.0);
  CHECK(check_monotonicity(sol, d).status == CheckStatus::pass);

  // h is even, so v(x,t) = u(-x,t) solves the equation with the step flipped
  std::vector<SolutionPatch> flipped = sol;
  for (SolutionPatch& p : flipped) {
    for (Field& f : p.fields) {
      std::vector<double> v(f.values.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = f.values[f.values.size() - 1 - i];
      f.values = std::move(v);
      f.far_left = 1.0;
      f.far_right = -1.0;
    }
  }
  CHECK(check_monotonicity(flipped, InitialData::step(1.0, -1.0)).status == CheckStatus::pass);

  // a flat interior region breaks strictness
  std::vector<SolutionPatch> flat = sol;
  for (Field& f : flat[0].fields)
    for (double& v : f.values) v = 0.0;
  CHECK(check_monotonicity(flat, d).status == CheckStatus::fail);

  InitialData pw = InitialData::piecewise({0.0}, {-1.0, 1.0});
  CHECK(check_monotonicity(sol, pw).status == CheckStatus::not_applicable);
}

TEST_CASE("far-field deviation sits under the Gaussian tail") {
  const auto& sol = riemann_solution();
  InitialData d = InitialData::step(-1.0, 1.0);
  InvariantReport rep = check_far_field(sol, d, {1.0, 1.4, 1.8});
  CHECK(rep.status == CheckStatus::pass);
  REQUIRE(rep.measured.size() == 3);
  CHECK(rep.measured[0].second >= rep.measured[2].second);
  CHECK_THROWS_AS(check_far_field(sol, d, {}), ConfigError);
  CHECK_THROWS_AS(check_far_field(sol, d, {5.0}), ConfigError);
}

TEST_CASE("Holder quotient is finite and stable under sample doubling") {
  const auto& sol = riemann_solution();
  for (double beta : {0.25, 0.5, 0.75}) {
    InvariantReport rep = check_holder(sol, beta, 1000);
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.measured[0].second > 0.0);
  }
  CHECK_THROWS_AS(check_holder(sol, 1.5), DomainError);
}

TEST_CASE("derivative decay rates on exact heat profiles") {
  std::vector<double> base{0.01, 0.02, 0.05, 0.1, 0.2, 0.4};
  std::vector<double> times;
  for (double t : base) {
    times.push_back(t * 0.98);
    times.push_back(t);
    times.push_back(t * 1.02);
  }
  auto sol = synthetic_heat_patches(times);
  DerivativeDecay dec = fit_derivative_decay(sol, kCoeff, base);
  CHECK(dec.ux.fitted_exponent == doctest::Approx(-0.5).epsilon(0.02));
  CHECK(dec.uxx.fitted_exponent == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(dec.ut.fitted_exponent == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(dec.ux.r_squared >= 0.99);
  CHECK(dec.uxx.r_squared >= 0.99);
  CHECK(dec.ut.r_squared >= 0.99);
  CHECK(std::isfinite(dec.ut_two_way_max_rel_diff));

  CHECK_THROWS_AS(fit_derivative_decay(sol, kCoeff, {0.01, 0.02, 0.05}), ConfigError);
  CHECK_THROWS_AS(fit_derivative_decay(sol, kCoeff, {0.1, 0.12, 0.15, 0.2}), ConfigError);
}

TEST_CASE("pde residual vanishes at second order for the mild solution") {
  const auto& sol = riemann_solution();
  PdeResidualResult res = pde_residual(sol, kCoeff, 0.015);
  CHECK(res.report.status == CheckStatus::pass);
  CHECK(res.order >= 1.5);
  CHECK(res.residuals[0] <= 0.05);

  // negative control: the wrong coefficient inflates the residual. Use the
  // tightest stencil, where the discretization residual is smallest, and a
  // strongly different decay exponent; near the layer every h is close to 1.
  const Field& fm = field_at(sol, 0.015 * 0.995, 1e-9);
  const Field& f0 = field_at(sol, 0.015, 1e-9);
  const Field& fp = field_at(sol, 0.015 * 1.005, 1e-9);
  const double good = pde_residual_fields(fm, f0, fp, kCoeff, 1);
  const double wrong = pde_residual_fields(fm, f0, fp, Coefficient(5.0), 1);
  CHECK(wrong > 10.0 * good);
}

TEST_CASE("gronwall series: frozen values and domain checks") {
  CHECK(gronwall_series(1.0, 1.0) == doctest::Approx(0.58269972789417754).epsilon(1e-13));
  CHECK(gronwall_series(1.0, 2.0) == doctest::Approx(2.874959259679517).epsilon(1e-13));
  CHECK(gronwall_series(1e-6, 1.0) > 0.0);
  CHECK(gronwall_series(0.25, 1.0) < gronwall_series(1.0, 1.0));
  CHECK_THROWS_AS(gronwall_series(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gronwall_series(1.0, 0.0), DomainError);
}

TEST_CASE("continuous dependence is linear in the data gap") {
  Coefficient c(1.0);
  SolverConfig cfg;
  cfg.grid.L = 2.0;
  cfg.grid.nx = 193;
  cfg.base_slices = 8;
  cfg.time_panels = 2;
  cfg.nodes_per_panel = 6;
  cfg.quad.hermite_order = 32;

  InitialData d1 = InitialData::step(-1.0, 1.0);
  InitialData d2 = InitialData::step(-1.0, 1.01);
  ContinuousDependence cd = continuous_dependence(d1, d2, 0.015, c, cfg);
  CHECK(cd.report.status == CheckStatus::pass);
  CHECK(cd.max_rel_deviation <= 0.10);
  REQUIRE(cd.ratio.size() == 10);
  for (double r : cd.ratio) {
    CHECK(r > 0.1);
    CHECK(r < 2.0);
  }
  CHECK(continuous_dependence(d1, d1, 0.015, c, cfg).report.status ==
        CheckStatus::not_applicable);
}
