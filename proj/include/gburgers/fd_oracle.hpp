#pragma once

#include "gburgers/coeff.hpp"
#include "gburgers/field.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/mild_solver.hpp"

#include <vector>

namespace gb {

enum class FdScheme { explicit_euler, semi_implicit };

/// Finite-difference reference solver configuration. The grid is staggered
/// (nodes at cell centers) so a jump at x = 0 falls between nodes.
struct FdConfig {
  double L = 2.0;
  int nx = 512;             // number of nodes
  double dt_factor = 0.4;   // fraction of the diffusive limit dx^2
  FdScheme scheme = FdScheme::explicit_euler;

  void validate() const;
  double dx() const { return 2.0 * L / nx; }
  double x(int i) const { return -L + (i + 0.5) * dx(); }
};

/// Marches u_t = u_xx - h(x) u u_x with central differences and Dirichlet
/// far-field boundary values; returns snapshots at the report times.
std::vector<Field> solve_fd(const InitialData& d, double T, const Coefficient& c,
                            const FdConfig& cfg, const std::vector<double>& report_times);

/// Per-report-time discrepancy between the two solvers.
struct DiscrepancyReport {
  std::vector<double> times;
  std::vector<double> sup;
  std::vector<double> l2;

  double max_sup() const;
};

/// Compares mild-solver patches against FD snapshots at matching report
/// times, on the mild grid away from the FD Dirichlet boundary.
DiscrepancyReport compare(const std::vector<SolutionPatch>& mild, const std::vector<Field>& fd);

/// Richardson-style observed convergence order from solves at nx, 2nx, 4nx,
/// measured in the sup norm at time t.
double fd_convergence_order(const InitialData& d, double t, const Coefficient& c,
                            const FdConfig& cfg);

} // namespace gb
