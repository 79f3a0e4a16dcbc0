#pragma once

#include "gburgers/coeff.hpp"
#include "gburgers/fd_oracle.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/mild_solver.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gb {

enum class CheckStatus { pass, fail, not_applicable, inconclusive };

/// Pass/fail plus the measured quantities behind one invariant check.
struct InvariantReport {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, double>> thresholds;
  std::string details;

  bool passed() const { return status == CheckStatus::pass || status == CheckStatus::not_applicable; }
  static const char* status_name(CheckStatus s);
};

/// Least-squares power-law fit norms ~ C * t^p on log-log data.
struct RateFit {
  std::vector<double> times;
  std::vector<double> norms;
  double fitted_exponent = 0.0;
  double fitted_constant = 0.0;
  double r_squared = 0.0;
};

RateFit fit_loglog(const std::vector<double>& times, const std::vector<double>& norms);

/// Solution stays within [inf u0 - tol, sup u0 + tol].
InvariantReport check_max_principle(const std::vector<SolutionPatch>& sol, const InitialData& d,
                                    double tol = 1e-4);

/// Strict spatial monotonicity for step data, sign matching sign(u+ - u-).
InvariantReport check_monotonicity(const std::vector<SolutionPatch>& sol, const InitialData& d);

/// |u(+-probe, t) - u^+-| under a Gaussian-tail threshold, improving outward.
InvariantReport check_far_field(const std::vector<SolutionPatch>& sol, const InitialData& d,
                                const std::vector<double>& probes);

struct DerivativeDecay {
  RateFit ux;
  RateFit uxx;
  RateFit ut;
  double ut_two_way_max_rel_diff = 0.0; // time differences vs u_xx - h u u_x
  InvariantReport report;
};

/// Sup-norm decay rates of u_x, u_xx, u_t over the given fit times; each fit
/// time t must have report fields at t and t(1 +- rel_dt_eps).
DerivativeDecay fit_derivative_decay(const std::vector<SolutionPatch>& sol, const Coefficient& c,
                                     const std::vector<double>& fit_times,
                                     double rel_dt_eps = 0.02, bool expect_step_rates = true);

/// Sampled Holder-quotient bound |u(x1,t)-u(x2,t)| / (|x1-x2|/sqrt(t))^beta,
/// with a sample-doubling stability probe.
InvariantReport check_holder(const std::vector<SolutionPatch>& sol, double beta,
                             int sample_count = 2000, std::uint64_t seed = 7);

struct PdeResidualResult {
  std::vector<double> spacings;   // stencil spacings used (multiples of dx)
  std::vector<double> residuals;  // sup residual per spacing
  double order = 0.0;             // observed refinement order
  InvariantReport report;
};

/// Sup of |u_t - u_xx + h u u_x| by finite differences at time t_eval, with
/// a stencil-refinement order estimate. Needs fields at t_eval(1 +- eps).
PdeResidualResult pde_residual(const std::vector<SolutionPatch>& sol, const Coefficient& c,
                               double t_eval, double rel_dt_eps = 0.005, double min_order = 1.5);

/// Same residual for an arbitrary time triplet of profiles (negative controls).
double pde_residual_fields(const Field& before, const Field& at, const Field& after,
                           const Coefficient& c, int stencil_step);

struct ContinuousDependence {
  std::vector<double> times;
  std::vector<double> ratio;       // ||u1-u2||_inf(t) / ||u01-u02||_inf
  std::vector<double> ratio_half;  // same with the data gap halved
  double max_rel_deviation = 0.0;
  double envelope_scale = 0.0;     // fitted K in R <= K (1 + S(t))
  double gronwall_kernel = 0.0;    // scale fed to the series
  InvariantReport report;
};

/// Response of the solution to an initial-data perturbation, checked for
/// linearity under gap halving and against a Gronwall-series envelope.
ContinuousDependence continuous_dependence(const InitialData& d1, const InitialData& d2, double T,
                                           const Coefficient& c, const SolverConfig& cfg);

/// Partial sum of scale^n t^{n/2} / (pi^{n/2} n Gamma(n/2)); stops when the
/// last term drops below 1e-14 of the sum.
double gronwall_series(double t, double scale, int n_max = 400);

} // namespace gb
