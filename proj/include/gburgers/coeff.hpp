#pragma once

#include "gburgers/errors.hpp"

#include <cmath>

namespace gb {

/// Advection coefficient h(x) = (1 + x^2)^{-alpha} with exact sup-norms.
struct Coefficient {
  double alpha;

  explicit Coefficient(double a) : alpha(a) {
    if (!(a > 0.0)) throw DomainError("Coefficient: alpha must be positive");
  }

  double h(double x) const { return std::pow(1.0 + x * x, -alpha); }

  double dh(double x) const { return -2.0 * alpha * x * std::pow(1.0 + x * x, -alpha - 1.0); }

  double sup_h() const { return 1.0; }

  /// max |h'|, attained at x^2 = 1/(2 alpha + 1).
  double sup_dh() const {
    const double a = alpha;
    return 2.0 * a * std::pow(2.0 * a + 1.0, a + 0.5) / std::pow(2.0 * a + 2.0, a + 1.0);
  }

  double argmax_dh() const { return 1.0 / std::sqrt(2.0 * alpha + 1.0); }
};

} // namespace gb
