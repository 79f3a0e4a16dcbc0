#include "gburgers/fd_oracle.hpp"

#include "gburgers/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gb {

void FdConfig::validate() const {
  if (!(L > 0.0)) throw ConfigError("FdConfig: L must be positive");
  if (nx < 128) throw ConfigError("FdConfig: nx must be >= 128");
  if (scheme == FdScheme::explicit_euler && !(dt_factor > 0.0 && dt_factor <= 0.5))
    throw ConfigError("FdConfig: explicit scheme needs dt_factor in (0, 0.5]");
  if (scheme == FdScheme::semi_implicit && !(dt_factor > 0.0))
    throw ConfigError("FdConfig: dt_factor must be positive");
}

namespace {

void step_explicit(std::vector<double>& u, std::vector<double>& un, double dt, double dx,
                   const std::vector<double>& hvals, double ul, double ur) {
  const int n = static_cast<int>(u.size());
  const double mu = dt / (dx * dx);
  const double adv = dt / (2.0 * dx);
  un[0] = ul;
  un[static_cast<std::size_t>(n - 1)] = ur;
  for (int i = 1; i < n - 1; ++i) {
    const double a = hvals[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    un[static_cast<std::size_t>(i)] =
        u[static_cast<std::size_t>(i)] +
        mu * (u[static_cast<std::size_t>(i + 1)] - 2.0 * u[static_cast<std::size_t>(i)] +
              u[static_cast<std::size_t>(i - 1)]) -
        adv * a * (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i - 1)]);
  }
  u.swap(un);
}

// Backward-Euler diffusion with explicit advection; Thomas solve.
void step_semi_implicit(std::vector<double>& u, std::vector<double>& rhs,
                        std::vector<double>& cp, std::vector<double>& dp, double dt, double dx,
                        const std::vector<double>& hvals, double ul, double ur) {
  const int n = static_cast<int>(u.size());
  const double mu = dt / (dx * dx);
  const double adv = dt / (2.0 * dx);
  for (int i = 1; i < n - 1; ++i) {
    const double a = hvals[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(i)] =
        u[static_cast<std::size_t>(i)] -
        adv * a * (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i - 1)]);
  }
  rhs[0] = ul;
  rhs[static_cast<std::size_t>(n - 1)] = ur;
  // Tridiagonal system: -mu u_{i-1} + (1+2mu) u_i - mu u_{i+1} = rhs_i.
  cp[0] = 0.0;
  dp[0] = rhs[0];
  for (int i = 1; i < n - 1; ++i) {
    const double denom = (1.0 + 2.0 * mu) + mu * cp[static_cast<std::size_t>(i - 1)];
    cp[static_cast<std::size_t>(i)] = -mu / denom;
    dp[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] + mu * dp[static_cast<std::size_t>(i - 1)]) / denom;
  }
  u[static_cast<std::size_t>(n - 1)] = rhs[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 1; --i)
    u[static_cast<std::size_t>(i)] = dp[static_cast<std::size_t>(i)] -
                                     cp[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i + 1)];
  u[0] = rhs[0];
}

} // namespace

std::vector<Field> solve_fd(const InitialData& d, double T, const Coefficient& c,
                            const FdConfig& cfg, const std::vector<double>& report_times) {
  cfg.validate();
  if (!(T > 0.0)) throw DomainError("solve_fd: T must be positive");
  const double dx = cfg.dx();
  const double bound = std::max(std::abs(d.inf_value()), std::abs(d.sup_value()));
  // Cell Peclet condition: central advection stays a convex combination.
  if (bound * c.sup_h() * dx / 2.0 > 1.0)
    throw ConfigError("solve_fd: grid too coarse for the advection speed");

  std::vector<double> u(static_cast<std::size_t>(cfg.nx));
  std::vector<double> hvals(static_cast<std::size_t>(cfg.nx));
  for (int i = 0; i < cfg.nx; ++i) {
    u[static_cast<std::size_t>(i)] = d.evaluate(cfg.x(i));
    hvals[static_cast<std::size_t>(i)] = c.h(cfg.x(i));
  }
  const double ul = d.far_left();
  const double ur = d.far_right();
  u[0] = ul;
  u[static_cast<std::size_t>(cfg.nx - 1)] = ur;

  std::vector<double> scratch1(u.size()), scratch2(u.size()), scratch3(u.size());
  const double dt_max = cfg.scheme == FdScheme::explicit_euler ? cfg.dt_factor * dx * dx
                                                               : cfg.dt_factor * dx;
  std::vector<double> marks = report_times;
  std::sort(marks.begin(), marks.end());
  for (double t : marks)
    if (!(t > 0.0) || t > T * (1.0 + 1e-12))
      throw ConfigError("solve_fd: report times must lie in (0, T]");

  std::vector<Field> out;
  double t_now = 0.0;
  for (double target : marks) {
    const double seg = target - t_now;
    if (seg > 0.0) {
      const int steps = std::max(1, static_cast<int>(std::ceil(seg / dt_max - 1e-12)));
      const double dt = seg / steps;
      for (int s = 0; s < steps; ++s) {
        if (cfg.scheme == FdScheme::explicit_euler)
          step_explicit(u, scratch1, dt, dx, hvals, ul, ur);
        else
          step_semi_implicit(u, scratch1, scratch2, scratch3, dt, dx, hvals, ul, ur);
      }
      t_now = target;
    }
    Field f;
    f.t = target;
    f.x0 = cfg.x(0);
    f.dx = dx;
    f.values = u;
    f.far_left = ul;
    f.far_right = ur;
    out.push_back(std::move(f));
  }
  return out;
}

double DiscrepancyReport::max_sup() const {
  double m = 0.0;
  for (double s : sup) m = std::max(m, s);
  return m;
}

DiscrepancyReport compare(const std::vector<SolutionPatch>& mild, const std::vector<Field>& fd) {
  DiscrepancyReport rep;
  for (const Field& f : fd) {
    const Field* match = nullptr;
    for (const SolutionPatch& p : mild) {
      for (const Field& g : p.fields) {
        if (std::abs(g.t - f.t) <= 1e-9 * std::max(1.0, f.t)) {
          match = &g;
          break;
        }
      }
      if (match) break;
    }
    if (!match) throw ConfigError("compare: no mild report field at fd time");
    const double fd_lo = f.x0;
    const double fd_hi = f.x(f.size() - 1);
    const double margin = 4.0 * f.dx;
    double sup = 0.0, sq = 0.0;
    int count = 0;
    for (int i = 0; i < match->size(); ++i) {
      const double x = match->x(i);
      if (x < fd_lo + margin || x > fd_hi - margin) continue;
      const double diff = match->values[static_cast<std::size_t>(i)] - f.value_at(x);
      sup = std::max(sup, std::abs(diff));
      sq += diff * diff;
      ++count;
    }
    if (count == 0) throw ConfigError("compare: spatial ranges do not overlap");
    rep.times.push_back(f.t);
    rep.sup.push_back(sup);
    rep.l2.push_back(std::sqrt(sq * match->dx));
  }
  return rep;
}

double fd_convergence_order(const InitialData& d, double t, const Coefficient& c,
                            const FdConfig& cfg) {
  const std::vector<double> times{t};
  FdConfig c1 = cfg;
  FdConfig c2 = cfg;
  c2.nx = 2 * cfg.nx;
  FdConfig c4 = cfg;
  c4.nx = 4 * cfg.nx;
  const Field f1 = solve_fd(d, t, c, c1, times)[0];
  const Field f2 = solve_fd(d, t, c, c2, times)[0];
  const Field f4 = solve_fd(d, t, c, c4, times)[0];
  double e12 = 0.0, e24 = 0.0;
  for (int i = 0; i < f1.size(); ++i) {
    const double x = f1.x(i);
    if (std::abs(x) > cfg.L - 8.0 * f1.dx) continue;
    e12 = std::max(e12, std::abs(f1.values[static_cast<std::size_t>(i)] - f2.value_at(x)));
    e24 = std::max(e24, std::abs(f2.value_at(x) - f4.value_at(x)));
  }
  return std::log2(e12 / e24);
}

} // namespace gb
