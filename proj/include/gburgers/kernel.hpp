#pragma once

#include "gburgers/quadrature.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gb {

/// Evaluation point of the heat kernel G(x,t;s,tau); requires t > tau.
struct KernelPoint {
  double x;
  double t;
  double s;
  double tau;
};

/// G(x,t;s,tau) = (4 pi (t-tau))^{-1/2} exp(-(x-s)^2 / (4(t-tau))).
double eval_G(const KernelPoint& p);

/// dG/ds = ((x-s)/(2(t-tau))) G; odd in (x-s).
double eval_Gs(const KernelPoint& p);

/// d2G/ds2 = ((x-s)^2/(4(t-tau)^2) - 1/(2(t-tau))) G.
double eval_Gss(const KernelPoint& p);

/// Integral of G over s for gap dt = t - tau; equals 1 exactly.
double integral_G(double dt, const QuadratureSpec& q = {});

/// Integral of |dG/ds| over s; equals 1/sqrt(pi dt) exactly.
double integral_absGs(double dt, const QuadratureSpec& q = {});

struct GssIntegrals {
  double signed_value;  // integral of G_ss ds, identically zero
  double absolute;      // integral of |G_ss| ds, scales as 1/dt
};

GssIntegrals integral_Gss_signed_and_abs(double dt, const QuadratureSpec& q = {});

/// Empirical constants for the six Holder-type difference bounds: the max
/// observed ratio of the integrated kernel difference to its scale factor.
struct HolderFit {
  double beta = 0.0;
  // Spatial differences |x1 - x2|: G, G_s, G_ss.
  double c_g_space = 0.0;
  double c_gs_space = 0.0;
  double c_gss_space = 0.0;
  // Temporal differences |t1 - t2|: G, G_s, G_ss.
  double c_g_time = 0.0;
  double c_gs_time = 0.0;
  double c_gss_time = 0.0;

  std::array<double, 6> as_array() const {
    return {c_g_space, c_gs_space, c_gss_space, c_g_time, c_gs_time, c_gss_time};
  }
  static const std::array<const char*, 6>& names();
};

/// Randomized fit of the six difference-bound constants for the given
/// Holder exponent. Deterministic for a fixed seed.
HolderFit fit_holder_constants(double beta, int sample_count, const QuadratureSpec& q = {},
                               std::uint64_t seed = 42);

} // namespace gb
