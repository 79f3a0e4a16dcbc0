#include "gburgers/kernel.hpp"

#include "gburgers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gb {

namespace {

double gap(const KernelPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.t) || !std::isfinite(p.s) || !std::isfinite(p.tau))
    throw DomainError("kernel point has non-finite coordinate");
  const double dt = p.t - p.tau;
  if (!(dt > 0.0)) throw DomainError("kernel requires t > tau");
  return dt;
}

constexpr double kFourPi = 4.0 * M_PI;

} // namespace

double eval_G(const KernelPoint& p) {
  const double dt = gap(p);
  const double d = p.x - p.s;
  return std::exp(-d * d / (4.0 * dt)) / std::sqrt(kFourPi * dt);
}

double eval_Gs(const KernelPoint& p) {
  const double dt = gap(p);
  return (p.x - p.s) / (2.0 * dt) * eval_G(p);
}

double eval_Gss(const KernelPoint& p) {
  const double dt = gap(p);
  const double d = p.x - p.s;
  return (d * d / (4.0 * dt * dt) - 1.0 / (2.0 * dt)) * eval_G(p);
}

// All identity integrals reduce, via s = x + 2 sqrt(dt) lambda, to
// dt-independent integrals in lambda with weight exp(-lambda^2).

double integral_G(double dt, const QuadratureSpec& q) {
  if (!(dt > 0.0)) throw DomainError("integral_G: dt must be positive");
  q.validate();
  const QuadratureRule& gh = gauss_hermite(q.hermite_order);
  double acc = 0.0;
  for (double w : gh.weights) acc += w;
  return acc / std::sqrt(M_PI);
}

double integral_absGs(double dt, const QuadratureSpec& q) {
  if (!(dt > 0.0)) throw DomainError("integral_absGs: dt must be positive");
  q.validate();
  const double lmax = gaussian_cutoff(q.tail_epsilon);
  // |G_s| ds = |lambda| exp(-lambda^2) / (sqrt(pi dt)) dlambda; even, kink at 0.
  const double half =
      integrate_panels([](double l) { return l * std::exp(-l * l); }, 0.0, lmax, q.panel_count);
  return 2.0 * half / std::sqrt(M_PI * dt);
}

GssIntegrals integral_Gss_signed_and_abs(double dt, const QuadratureSpec& q) {
  if (!(dt > 0.0)) throw DomainError("integral_Gss: dt must be positive");
  q.validate();
  const QuadratureRule& gh = gauss_hermite(q.hermite_order);
  double signed_acc = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    const double l = gh.nodes[k];
    signed_acc += gh.weights[k] * (l * l - 0.5);
  }
  const double lmax = gaussian_cutoff(q.tail_epsilon);
  const double root = std::sqrt(0.5); // sign change of lambda^2 - 1/2
  auto f = [](double l) { return std::abs(l * l - 0.5) * std::exp(-l * l); };
  const double abs_half = integrate_panels(f, 0.0, root, q.panel_count) +
                          integrate_panels(f, root, lmax, q.panel_count);
  GssIntegrals out;
  out.signed_value = signed_acc / (std::sqrt(M_PI) * dt);
  out.absolute = 2.0 * abs_half / (std::sqrt(M_PI) * dt);
  return out;
}

const std::array<const char*, 6>& HolderFit::names() {
  static const std::array<const char*, 6> n = {"G_space",  "Gs_space", "Gss_space",
                                               "G_time",   "Gs_time",  "Gss_time"};
  return n;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

// Integral over s of |K(x1,t1) - K(x2,t2)| for K in {G, G_s, G_ss}.
template <typename Eval>
double abs_diff_integral(Eval&& eval, double x1, double t1, double x2, double t2, double tau,
                         const QuadratureSpec& q) {
  const double w = 2.0 * std::sqrt(std::max(t1, t2) - tau) * gaussian_cutoff(q.tail_epsilon);
  const double lo = std::min(x1, x2) - w;
  const double hi = std::max(x1, x2) + w;
  auto f = [&](double s) {
    return std::abs(eval(KernelPoint{x1, t1, s, tau}) - eval(KernelPoint{x2, t2, s, tau}));
  };
  // Panels dense enough to resolve the sign-change kinks of the difference.
  return integrate_panels(f, lo, hi, 2 * q.panel_count);
}

} // namespace

HolderFit fit_holder_constants(double beta, int sample_count, const QuadratureSpec& q,
                               std::uint64_t seed) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("fit_holder_constants: beta must be in (0,1)");
  if (sample_count < 1) throw DomainError("fit_holder_constants: sample_count must be positive");
  q.validate();
  std::mt19937_64 rng(seed);
  HolderFit fit;
  fit.beta = beta;
  for (int i = 0; i < sample_count; ++i) {
    // Spatial differences: sample the scale ratio rho = |x1-x2|/sqrt(dt) directly.
    {
      const double rho = log_uniform(rng, 1e-3, 10.0);
      const double dt = log_uniform(rng, 1e-3, 1.0);
      const double x1 = -2.0 + 4.0 * uniform01(rng);
      const double x2 = x1 + rho * std::sqrt(dt);
      const double t = dt; // tau = 0
      const double scale = std::pow(rho, beta);
      fit.c_g_space = std::max(
          fit.c_g_space, abs_diff_integral(eval_G, x1, t, x2, t, 0.0, q) / scale);
      fit.c_gs_space = std::max(
          fit.c_gs_space, abs_diff_integral(eval_Gs, x1, t, x2, t, 0.0, q) / (scale / std::sqrt(dt)));
      fit.c_gss_space = std::max(
          fit.c_gss_space, abs_diff_integral(eval_Gss, x1, t, x2, t, 0.0, q) / (scale / dt));
    }
    // Temporal differences: sample r = |t1-t2|/(t2-tau), with t1 > t2 > tau.
    {
      const double r = log_uniform(rng, 1e-3, 10.0);
      const double dt2 = log_uniform(rng, 1e-3, 1.0);
      const double x = -2.0 + 4.0 * uniform01(rng);
      const double t2 = dt2; // tau = 0
      const double t1 = t2 + r * dt2;
      const double scale = std::pow(r, beta / 2.0);
      fit.c_g_time = std::max(
          fit.c_g_time, abs_diff_integral(eval_G, x, t1, x, t2, 0.0, q) / scale);
      fit.c_gs_time = std::max(
          fit.c_gs_time,
          abs_diff_integral(eval_Gs, x, t1, x, t2, 0.0, q) / (scale / std::sqrt(dt2)));
      fit.c_gss_time = std::max(
          fit.c_gss_time, abs_diff_integral(eval_Gss, x, t1, x, t2, 0.0, q) / (scale / dt2));
    }
  }
  return fit;
}

} // namespace gb
