#include "gburgers/mild_solver.hpp"

#include "gburgers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace gb {

void SolverConfig::validate() const {
  grid.validate();
  quad.validate();
  if (!(picard_tol > 0.0)) throw ConfigError("SolverConfig: picard_tol must be positive");
  if (max_iterations < 1) throw ConfigError("SolverConfig: max_iterations must be positive");
  if (time_panels < 1 || nodes_per_panel < 2) throw ConfigError("SolverConfig: bad time quadrature");
  if (base_slices < 4) throw ConfigError("SolverConfig: base_slices must be >= 4");
  if (t_min_report < 0.0) throw ConfigError("SolverConfig: t_min_report must be >= 0");
  if (!(contraction_slack >= 0.0)) throw ConfigError("SolverConfig: bad contraction_slack");
}

double certified_step(double norm_u0, const Coefficient& c) {
  if (!(norm_u0 >= 0.0)) throw DomainError("certified_step: norm_u0 must be >= 0");
  const double A = 0.5 * c.sup_dh() + 1.0 / std::sqrt(M_PI);
  const double n1 = norm_u0 + 1.0;
  const double a = 1.0 / ((n1 * n1 * A) * (n1 * n1 * A));
  const double b = 1.0 / ((4.0 * n1 * A) * (4.0 * n1 * A));
  return std::min({1.0, a, b});
}

namespace {

constexpr double kTinyTime = 1e-300;

struct PadGrid {
  double x0;
  double dx;
  int n;
};

/// Heat convolution of the patch's initial state, evaluated on demand.
class BaseProfile {
public:
  /// Jump structure of the underlying data, when it is piecewise constant.
  /// base_s(s, dt) = sum_j deltas[j] G(s, dt; positions[j], 0) exactly.
  struct JumpSet {
    std::vector<double> positions;
    std::vector<double> deltas;
  };

  virtual ~BaseProfile() = default;
  virtual void fill(double dt, const PadGrid& g, std::vector<double>& out) const = 0;
  virtual const JumpSet* jump_set() const { return nullptr; }
  virtual double value_at(double /*s*/, double /*dt*/) const { return 0.0; }
  virtual double far_left() const = 0;
  virtual double far_right() const = 0;
};

class DataBase final : public BaseProfile {
public:
  DataBase(const InitialData& d, const QuadratureSpec& q) : d_(d), q_(q) {
    if (const auto* s = d.as_step()) {
      if (s->u_plus != s->u_minus) {
        jumps_.positions.push_back(0.0);
        jumps_.deltas.push_back(s->u_plus - s->u_minus);
      }
    } else if (const auto* p = d.as_piecewise()) {
      for (std::size_t j = 0; j < p->breakpoints.size(); ++j) {
        if (p->values[j + 1] != p->values[j]) {
          jumps_.positions.push_back(p->breakpoints[j]);
          jumps_.deltas.push_back(p->values[j + 1] - p->values[j]);
        }
      }
    }
  }
  void fill(double dt, const PadGrid& g, std::vector<double>& out) const override {
    out.resize(static_cast<std::size_t>(g.n));
    const double t = std::max(dt, kTinyTime);
    for (int i = 0; i < g.n; ++i)
      out[static_cast<std::size_t>(i)] = d_.heat_convolution(g.x0 + i * g.dx, t, q_);
  }
  const JumpSet* jump_set() const override {
    return (d_.as_step() || d_.as_piecewise()) ? &jumps_ : nullptr;
  }
  double value_at(double s, double dt) const override {
    return d_.heat_convolution(s, std::max(dt, kTinyTime), q_);
  }
  double far_left() const override { return d_.far_left(); }
  double far_right() const override { return d_.far_right(); }

private:
  const InitialData& d_;
  QuadratureSpec q_;
  JumpSet jumps_;
};

/// Heat convolution of a grid-sampled restart profile (continuation patches):
/// Gaussian-weighted quadrature with cubic interpolation of the profile.
class GridRestartBase final : public BaseProfile {
public:
  GridRestartBase(const Field& u0, const QuadratureSpec& q, double max_offset)
      : dx_(u0.dx), fl_(u0.far_left), fr_(u0.far_right), q_(q) {
    const int extra = static_cast<int>(std::ceil(max_offset / dx_)) + 4;
    ext_x0_ = u0.x0 - extra * dx_;
    ext_.assign(static_cast<std::size_t>(u0.size() + 2 * extra), 0.0);
    for (int i = 0; i < extra; ++i) ext_[static_cast<std::size_t>(i)] = fl_;
    for (int i = 0; i < u0.size(); ++i)
      ext_[static_cast<std::size_t>(extra + i)] = u0.values[static_cast<std::size_t>(i)];
    for (int i = extra + u0.size(); i < static_cast<int>(ext_.size()); ++i)
      ext_[static_cast<std::size_t>(i)] = fr_;
  }

  void fill(double dt, const PadGrid& g, std::vector<double>& out) const override {
    out.assign(static_cast<std::size_t>(g.n), 0.0);
    const QuadratureRule& gh = gauss_hermite(q_.hermite_order);
    const double lcut = gaussian_cutoff(q_.tail_epsilon);
    const double w = 2.0 * std::sqrt(std::max(dt, 0.0));
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
      if (std::abs(gh.nodes[k]) > lcut) continue;
      const double rel0 = (g.x0 + w * gh.nodes[k] - ext_x0_) / dx_;
      const double wk = gh.weights[k] * inv_sqrt_pi;
      const int i0 = static_cast<int>(std::floor(rel0));
      double cw[4];
      cubic_weights(rel0 - i0, cw);
      for (int i = 0; i < g.n; ++i) {
        const int p = i0 + i; // engine grid shares the spacing dx_
        out[static_cast<std::size_t>(i)] +=
            wk * (cw[0] * at(p - 1) + cw[1] * at(p) + cw[2] * at(p + 1) + cw[3] * at(p + 2));
      }
    }
  }
  double far_left() const override { return fl_; }
  double far_right() const override { return fr_; }

private:
  double at(int i) const {
    if (i < 0) return fl_;
    if (i >= static_cast<int>(ext_.size())) return fr_;
    return ext_[static_cast<std::size_t>(i)];
  }
  double dx_, fl_, fr_;
  double ext_x0_ = 0.0;
  std::vector<double> ext_;
  QuadratureSpec q_;
};

class PatchEngine {
public:
  PatchEngine(const BaseProfile& base, double t0, std::vector<double> slice_times,
              const Coefficient& c, const SolverConfig& cfg)
      : t0_(t0), ts_(std::move(slice_times)), cfg_(cfg), coeff_(c) {
    const GridSpec& grid = cfg.grid;
    const double dx = grid.dx();
    const double duration = ts_.back() - t0_;
    const double lcut = gaussian_cutoff(cfg.quad.tail_epsilon);
    const QuadratureRule& gh = gauss_hermite(cfg.quad.hermite_order);
    for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
      if (std::abs(gh.nodes[k]) > lcut) continue;
      lam_.push_back(gh.nodes[k]);
      glw_.push_back(gh.weights[k]);
    }
    const double max_offset = 2.0 * std::sqrt(duration) * lcut;
    P_ = static_cast<int>(std::ceil(max_offset / dx)) + 3;
    pad_ = PadGrid{-grid.L - P_ * dx, dx, grid.nx + 2 * P_};

    hs_.resize(static_cast<std::size_t>(pad_.n));
    dhs_.resize(static_cast<std::size_t>(pad_.n));
    for (int p = 0; p < pad_.n; ++p) {
      const double s = pad_.x0 + p * dx;
      hs_[static_cast<std::size_t>(p)] = c.h(s);
      dhs_[static_cast<std::size_t>(p)] = c.dh(s);
    }

    base_slice_.resize(ts_.size());
    std::vector<double> padded;
    for (std::size_t j = 0; j < ts_.size(); ++j) {
      base.fill(ts_[j] - t0_, pad_, padded);
      base_slice_[j].assign(padded.begin() + P_, padded.begin() + P_ + grid.nx);
    }

    // Substituted time integral: tau = t - r^2, then r = sqrt(dt) sin(theta);
    // the integrand is smooth in theta at both endpoints.
    const QuadratureRule& gl = gauss_legendre(cfg.nodes_per_panel);
    nodes_.resize(ts_.size());
    const int M = static_cast<int>(ts_.size()) + 1; // augmented with t0
    std::vector<double> taug(static_cast<std::size_t>(M));
    taug[0] = t0_;
    for (std::size_t j = 0; j < ts_.size(); ++j) taug[j + 1] = ts_[j];
    for (std::size_t j = 0; j < ts_.size(); ++j) {
      const double dt_j = ts_[j] - t0_;
      const double sq = std::sqrt(dt_j);
      const double hpan = (M_PI / 2.0) / cfg.time_panels;
      for (int p = 0; p < cfg.time_panels; ++p) {
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
          const double theta = p * hpan + 0.5 * hpan * (1.0 + gl.nodes[k]);
          TauNode node;
          node.r = sq * std::sin(theta);
          node.weight = 0.5 * hpan * gl.weights[k] * sq * std::cos(theta);
          const double tau = ts_[j] - node.r * node.r;
          node.tau_rel = tau - t0_;
          build_stencil(node, tau, taug, static_cast<int>(j));
          base.fill(node.tau_rel, pad_, node.base_vals);
          nodes_[j].push_back(std::move(node));
        }
      }
    }
    far_left_ = base.far_left();
    far_right_ = base.far_right();

    // The base-squared part of the forcing is iterate independent; fix it
    // once. For piecewise data the parts-integrated form
    //   -int G(x,t;s,tau) h(s) base(s) base_s(s) ds
    // collapses each jump into a product of two Gaussians, so the inner
    // integral is smooth however small tau - t0 gets. Grid interpolation of
    // base^2 would alias that layer once its width drops below dx.
    force_base_.assign(ts_.size(),
                       std::vector<double>(static_cast<std::size_t>(grid.nx), 0.0));
    const BaseProfile::JumpSet* jumps = base.jump_set();
    std::vector<double> A(static_cast<std::size_t>(pad_.n));
    std::vector<double> B(static_cast<std::size_t>(pad_.n));
    for (std::size_t j = 0; j < ts_.size(); ++j) {
      for (const TauNode& node : nodes_[j]) {
        if (jumps) {
          add_jump_force(*jumps, base, node, force_base_[j]);
        } else {
          for (int p = 0; p < pad_.n; ++p) {
            const double half_b2 =
                0.5 * node.base_vals[static_cast<std::size_t>(p)] *
                node.base_vals[static_cast<std::size_t>(p)];
            A[static_cast<std::size_t>(p)] = half_b2 * dhs_[static_cast<std::size_t>(p)];
            B[static_cast<std::size_t>(p)] = half_b2 * hs_[static_cast<std::size_t>(p)];
          }
          convolve_node(node, A.data(), B.data(), force_base_[j].data());
        }
      }
    }
  }

  const std::vector<std::vector<double>>& base_slices() const { return base_slice_; }
  double far_left() const { return far_left_; }
  double far_right() const { return far_right_; }

  /// The Duhamel integral term on the report grid, for the iterate whose
  /// deviation from the base profile is w (one vector per slice).
  std::vector<std::vector<double>> apply(const std::vector<std::vector<double>>& w) const {
    const int nx = cfg_.grid.nx;
    const int npad = pad_.n;
    std::vector<std::vector<double>> out(ts_.size());
    std::vector<double> A(static_cast<std::size_t>(npad));
    std::vector<double> B(static_cast<std::size_t>(npad));
    for (std::size_t j = 0; j < ts_.size(); ++j) {
      out[j] = force_base_[j];
      double* oj = out[j].data();
      for (const TauNode& node : nodes_[j]) {
        // v = base(tau) + cubic-in-tau blend of w (zero at t0); the base^2
        // part is already in force_base_, leaving v^2/2 - base^2/2.
        for (int p = 0; p < npad; ++p) {
          double wv = 0.0;
          for (int l = 0; l < node.npts; ++l) {
            const int sl = node.stencil[l];
            if (sl == 0) continue; // w vanishes at t0
            const int gi = p - P_;
            const double wl = (gi < 0 || gi >= nx) ? 0.0
                                                   : w[static_cast<std::size_t>(sl - 1)]
                                                      [static_cast<std::size_t>(gi)];
            wv += node.coef[l] * wl;
          }
          const double q =
              wv * (node.base_vals[static_cast<std::size_t>(p)] + 0.5 * wv);
          A[static_cast<std::size_t>(p)] = q * dhs_[static_cast<std::size_t>(p)];
          B[static_cast<std::size_t>(p)] = q * hs_[static_cast<std::size_t>(p)];
        }
        convolve_node(node, A.data(), B.data(), oj);
      }
    }
    return out;
  }

  const std::vector<double>& slice_times() const { return ts_; }

private:
  struct TauNode {
    double tau_rel = 0.0;
    double r = 0.0;
    double weight = 0.0;
    int stencil[4] = {0, 0, 0, 0}; // indices into [t0, ts...]
    double coef[4] = {0.0, 0.0, 0.0, 0.0};
    int npts = 0;
    std::vector<double> base_vals;
  };

  // Accumulates one tau node of int G A ds + int G_s B ds onto the report
  // grid via the banded cubic interpolation along s = x + 2 r lambda.
  void convolve_node(const TauNode& node, const double* Ad, const double* Bd, double* oj) const {
    const int nx = cfg_.grid.nx;
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (std::size_t k = 0; k < lam_.size(); ++k) {
      const double shift = 2.0 * node.r * lam_[k] / pad_.dx;
      const int i0 = static_cast<int>(std::floor(shift));
      double cw[4];
      cubic_weights(shift - i0, cw);
      const double ca = node.weight * (2.0 * node.r * inv_sqrt_pi) * glw_[k];
      const double cb = -node.weight * (2.0 * inv_sqrt_pi) * glw_[k] * lam_[k];
      const int off = P_ + i0 - 1;
      for (int i = 0; i < nx; ++i) {
        const double* a = Ad + off + i;
        const double* b = Bd + off + i;
        oj[i] += ca * (cw[0] * a[0] + cw[1] * a[1] + cw[2] * a[2] + cw[3] * a[3]) +
                 cb * (cw[0] * b[0] + cw[1] * b[1] + cw[2] * b[2] + cw[3] * b[3]);
      }
    }
  }

  // One tau node of the base^2 forcing for piecewise data. Writing the
  // forcing as -int G h base base_s ds and using
  //   G(x,t;s,tau) G(s,tau;b,t0) = G(x,t;b,t0) G_sigma(s - mu),
  //   sigma = r^2 taub / (r^2 + taub),  mu = (x taub + b r^2) / (r^2 + taub),
  // leaves an inner integral whose integrand is O(1)-smooth in the scaled
  // variable, so a short Gauss-Hermite rule is exact for practical purposes.
  void add_jump_force(const BaseProfile::JumpSet& jumps, const BaseProfile& base,
                      const TauNode& node, std::vector<double>& out) const {
    if (jumps.positions.empty()) return;
    const int nx = cfg_.grid.nx;
    const double dx = pad_.dx;
    const double x_lo = pad_.x0 + P_ * dx;
    const QuadratureRule& gh = gauss_hermite(24);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    const double lcut = gaussian_cutoff(cfg_.quad.tail_epsilon);
    const double r2 = node.r * node.r;
    const double taub = std::max(node.tau_rel, kTinyTime);
    const double gap = r2 + taub;
    const double width = 2.0 * std::sqrt(gap);
    const double sqs = 2.0 * std::sqrt(r2 * taub / gap);
    const double wfac = 2.0 * node.r * node.weight;
    for (std::size_t jm = 0; jm < jumps.positions.size(); ++jm) {
      const double b = jumps.positions[jm];
      const double du = jumps.deltas[jm];
      for (int i = 0; i < nx; ++i) {
        const double x = x_lo + i * dx;
        const double z = (x - b) / width;
        if (std::abs(z) > lcut) continue;
        const double mu = (x * taub + b * r2) / gap;
        double inner = 0.0;
        for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
          const double s = mu + sqs * gh.nodes[k];
          inner += gh.weights[k] * coeff_.h(s) * base.value_at(s, taub);
        }
        inner *= inv_sqrt_pi;
        out[static_cast<std::size_t>(i)] -=
            wfac * du * std::exp(-z * z) / (width * std::sqrt(M_PI)) * inner;
      }
    }
  }

  // Cubic Lagrange stencil in tau over the augmented slice list, clamped so
  // that no slice after j+1 is consulted.
  void build_stencil(TauNode& node, double tau, const std::vector<double>& taug, int j) const {
    const int M = static_cast<int>(taug.size());
    const int hi = std::min(j + 1, M - 1);
    int k = 0;
    while (k + 1 <= hi && taug[static_cast<std::size_t>(k + 1)] <= tau) ++k;
    const int npts = std::min(4, hi + 1);
    int s0 = std::clamp(k - 1, 0, hi - (npts - 1));
    node.npts = npts;
    for (int l = 0; l < npts; ++l) {
      node.stencil[l] = s0 + l;
      double cl = 1.0;
      for (int m2 = 0; m2 < npts; ++m2) {
        if (m2 == l) continue;
        cl *= (tau - taug[static_cast<std::size_t>(s0 + m2)]) /
              (taug[static_cast<std::size_t>(s0 + l)] - taug[static_cast<std::size_t>(s0 + m2)]);
      }
      node.coef[l] = cl;
    }
  }

  double t0_;
  std::vector<double> ts_;
  SolverConfig cfg_;
  Coefficient coeff_;
  PadGrid pad_{0.0, 0.0, 0};
  int P_ = 0;
  double far_left_ = 0.0, far_right_ = 0.0;
  std::vector<double> hs_, dhs_;
  std::vector<double> lam_, glw_;
  std::vector<std::vector<double>> base_slice_;
  std::vector<std::vector<TauNode>> nodes_;
  std::vector<std::vector<double>> force_base_;
};

std::vector<double> make_slice_times(double t0, double duration, const SolverConfig& cfg) {
  const int m = cfg.base_slices;
  const double t_min = cfg.t_min_report > 0.0 ? cfg.t_min_report : 1e-3 * duration;
  std::vector<double> ts;
  for (int j = 1; j <= m; ++j) {
    const double frac = static_cast<double>(j) / m;
    ts.push_back(t0 + duration * frac * frac);
  }
  for (double tr : cfg.report_times) {
    if (tr > t0 + t_min && tr <= t0 + duration * (1.0 + 1e-12)) ts.push_back(std::min(tr, t0 + duration));
  }
  std::sort(ts.begin(), ts.end());
  std::vector<double> merged;
  for (double t : ts) {
    if (merged.empty() || t - merged.back() > 1e-10 * duration) merged.push_back(t);
    else merged.back() = std::max(merged.back(), t);
  }
  merged.back() = t0 + duration; // keep the terminal time exact
  return merged;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

SolutionPatch solve_patch(const BaseProfile& base, double t0, double duration, double bound,
                          const Coefficient& c, const SolverConfig& cfg) {
  PatchEngine engine(base, t0, make_slice_times(t0, duration, cfg), c, cfg);
  const auto& ts = engine.slice_times();
  const int nx = cfg.grid.nx;
  std::vector<std::vector<double>> w(ts.size(), std::vector<double>(static_cast<std::size_t>(nx), 0.0));
  std::vector<double> history;
  const double ratio_floor = 50.0 * cfg.picard_tol;
  const double s_slack = 1e-7;
  bool converged = false;
  int iterations = 0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    std::vector<std::vector<double>> wn = engine.apply(w);
    double resid = 0.0;
    for (std::size_t j = 0; j < ts.size(); ++j) resid = std::max(resid, sup_diff(wn[j], w[j]));
    history.push_back(resid);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      double sup = 0.0;
      for (std::size_t i = 0; i < wn[j].size(); ++i)
        sup = std::max(sup, std::abs(engine.base_slices()[j][i] + wn[j][i]));
      if (sup > bound + s_slack)
        throw CertificationError("Picard iterate left the invariant set S", history);
    }
    if (history.size() >= 2) {
      const double prev = history[history.size() - 2];
      if (prev > ratio_floor && resid > ratio_floor &&
          resid > (0.5 + cfg.contraction_slack) * prev)
        throw CertificationError("contraction certificate violated", history);
    }
    w = std::move(wn);
    iterations = it;
    if (resid <= cfg.picard_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("Picard iteration exceeded max_iterations", history);

  SolutionPatch patch;
  patch.t0 = t0;
  patch.t_star = duration;
  patch.iterations = iterations;
  patch.residual_history = std::move(history);
  patch.bound = bound;
  patch.fields.reserve(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    Field f;
    f.t = ts[j];
    f.x0 = -cfg.grid.L;
    f.dx = cfg.grid.dx();
    f.values.resize(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i)
      f.values[static_cast<std::size_t>(i)] =
          engine.base_slices()[j][static_cast<std::size_t>(i)] + w[j][static_cast<std::size_t>(i)];
    f.far_left = engine.far_left();
    f.far_right = engine.far_right();
    patch.fields.push_back(std::move(f));
  }
  return patch;
}

double max_restart_offset(double duration, const QuadratureSpec& q) {
  return 2.0 * std::sqrt(duration) * gaussian_cutoff(q.tail_epsilon) + 1.0;
}

} // namespace

std::vector<Field> apply_M(const std::vector<Field>& v, const InitialData& d,
                           const Coefficient& c, const SolverConfig& cfg, double t0) {
  cfg.validate();
  if (v.empty()) throw ConfigError("apply_M: empty iterate");
  const double bound = d.sup_norm() + 1.0;
  std::vector<double> ts;
  for (const Field& f : v) {
    if (f.size() != cfg.grid.nx || std::abs(f.x0 + cfg.grid.L) > 1e-12)
      throw ConfigError("apply_M: iterate grid does not match the configuration");
    if (f.sup_norm() > bound + 1e-12)
      throw DomainError("apply_M: iterate violates the invariant-set bound");
    ts.push_back(f.t);
  }
  DataBase base(d, cfg.quad);
  PatchEngine engine(base, t0, ts, c, cfg);
  std::vector<std::vector<double>> w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    w[j].resize(v[j].values.size());
    for (std::size_t i = 0; i < w[j].size(); ++i)
      w[j][i] = v[j].values[i] - engine.base_slices()[j][i];
  }
  std::vector<std::vector<double>> out = engine.apply(w);
  std::vector<Field> result = v;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < out[j].size(); ++i)
      result[j].values[i] = engine.base_slices()[j][i] + out[j][i];
  return result;
}

SolutionPatch solve_local(const InitialData& d, double t0, const Coefficient& c,
                          const SolverConfig& cfg) {
  cfg.validate();
  const double norm0 = d.sup_norm();
  const double t_star = certified_step(norm0, c);
  DataBase base(d, cfg.quad);
  return solve_patch(base, t0, t_star, norm0 + 1.0, c, cfg);
}

std::vector<SolutionPatch> solve_global(const InitialData& d, double T, const Coefficient& c,
                                        const SolverConfig& cfg) {
  cfg.validate();
  if (!(T > 0.0)) throw DomainError("solve_global: T must be positive");
  const double bound_norm = std::max(std::abs(d.inf_value()), std::abs(d.sup_value()));
  const double t_star = certified_step(bound_norm, c);
  std::vector<SolutionPatch> patches;
  double t0 = 0.0;
  int index = 0;
  while (t0 < T * (1.0 - 1e-12)) {
    const double duration = std::min(t_star, T - t0);
    try {
      if (patches.empty()) {
        DataBase base(d, cfg.quad);
        patches.push_back(solve_patch(base, t0, duration, bound_norm + 1.0, c, cfg));
      } else {
        GridRestartBase base(patches.back().terminal(), cfg.quad,
                             max_restart_offset(duration, cfg.quad));
        patches.push_back(solve_patch(base, t0, duration, bound_norm + 1.0, c, cfg));
      }
    } catch (ConvergenceError& e) {
      throw ConvergenceError("patch " + std::to_string(index) + ": " + e.what(),
                             std::move(e.residual_history));
    } catch (CertificationError& e) {
      throw CertificationError("patch " + std::to_string(index) + ": " + e.what(),
                               std::move(e.residual_history));
    }
    t0 += duration;
    ++index;
  }
  return patches;
}

double integral_residual(const SolutionPatch& patch, const InitialData& d, const Coefficient& c,
                         const SolverConfig& cfg) {
  cfg.validate();
  std::vector<double> ts;
  for (const Field& f : patch.fields) ts.push_back(f.t);
  DataBase base(d, cfg.quad);
  PatchEngine engine(base, patch.t0, ts, c, cfg);
  std::vector<std::vector<double>> w(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    w[j].resize(patch.fields[j].values.size());
    for (std::size_t i = 0; i < w[j].size(); ++i)
      w[j][i] = patch.fields[j].values[i] - engine.base_slices()[j][i];
  }
  std::vector<std::vector<double>> out = engine.apply(w);
  double resid = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) resid = std::max(resid, sup_diff(out[j], w[j]));
  return resid;
}

std::vector<const Field*> all_fields(const std::vector<SolutionPatch>& patches) {
  std::vector<const Field*> out;
  for (const SolutionPatch& p : patches)
    for (const Field& f : p.fields) out.push_back(&f);
  return out;
}

const Field& field_at(const std::vector<SolutionPatch>& patches, double t, double tol) {
  const Field* best = nullptr;
  double best_gap = tol;
  for (const SolutionPatch& p : patches) {
    for (const Field& f : p.fields) {
      const double gap = std::abs(f.t - t);
      if (gap <= best_gap) {
        best_gap = gap;
        best = &f;
      }
    }
  }
  if (!best) throw ConfigError("field_at: no report field at requested time");
  return *best;
}

} // namespace gb
