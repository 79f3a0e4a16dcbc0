#pragma once

#include "gburgers/coeff.hpp"
#include "gburgers/field.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/quadrature.hpp"

#include <vector>

namespace gb {

/// Configuration of the mild (Duhamel) solver.
struct SolverConfig {
  GridSpec grid;
  double picard_tol = 1e-8;
  int max_iterations = 60;
  QuadratureSpec quad;
  int time_panels = 4;       // panels of the substituted time integral
  int nodes_per_panel = 10;  // Gauss-Legendre nodes per time panel
  int base_slices = 24;      // quadratically graded time slices per patch
  double t_min_report = 0.0; // 0 selects the default 1e-3 * t_star
  double contraction_slack = 0.05;
  std::vector<double> report_times; // extra absolute slice times, optional

  void validate() const;
};

/// A local-in-time mild solution on (t0, t0 + t_star].
struct SolutionPatch {
  double t0 = 0.0;
  double t_star = 0.0; // certified step actually used (patch duration)
  std::vector<Field> fields;
  int iterations = 0;
  std::vector<double> residual_history;
  double bound = 0.0; // ||u0||_inf + 1

  double end_time() const { return t0 + t_star; }
  const Field& terminal() const { return fields.back(); }
};

/// Local existence time T(||u0||_inf, alpha) of the contraction argument.
double certified_step(double norm_u0, const Coefficient& c);

/// One application of the Duhamel map M to a time-indexed iterate. The
/// iterate must satisfy the invariant-set bound sup|v| <= ||u0||_inf + 1.
std::vector<Field> apply_M(const std::vector<Field>& v, const InitialData& d,
                           const Coefficient& c, const SolverConfig& cfg, double t0 = 0.0);

/// Picard iteration from the heat convolution to the fixed point of M.
SolutionPatch solve_local(const InitialData& d, double t0, const Coefficient& c,
                          const SolverConfig& cfg);

/// Global continuation: chains local patches over (0, T] with a uniform
/// certified step derived from the a priori max-principle bound.
std::vector<SolutionPatch> solve_global(const InitialData& d, double T, const Coefficient& c,
                                        const SolverConfig& cfg);

/// Sup over the patch slices of |u - M[u]| for a converged patch.
double integral_residual(const SolutionPatch& patch, const InitialData& d, const Coefficient& c,
                         const SolverConfig& cfg);

/// All report fields of a patch chain, in time order.
std::vector<const Field*> all_fields(const std::vector<SolutionPatch>& patches);

/// Field at the report time closest to t (within tolerance); throws
/// ConfigError when none matches.
const Field& field_at(const std::vector<SolutionPatch>& patches, double t, double tol = 1e-9);

} // namespace gb
