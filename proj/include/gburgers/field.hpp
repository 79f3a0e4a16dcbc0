#pragma once

#include "gburgers/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace gb {

/// Uniform symmetric grid on [-L, L].
struct GridSpec {
  double L = 2.0;
  int nx = 513;

  void validate() const {
    if (!(L > 0.0)) throw ConfigError("GridSpec: L must be positive");
    if (nx < 64) throw ConfigError("GridSpec: nx must be >= 64");
  }
  double dx() const { return 2.0 * L / (nx - 1); }
  double x(int i) const { return -L + i * dx(); }
};

/// Cubic Lagrange weights for a point at fractional offset f in [0,1]
/// between the middle two of four equispaced samples.
inline void cubic_weights(double f, double w[4]) {
  w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
  w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
  w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
}

/// A spatial profile u(., t) on a uniform grid with constant far-field
/// extension beyond [-L, L].
struct Field {
  double t = 0.0;
  double x0 = 0.0;  // leftmost node
  double dx = 0.0;
  std::vector<double> values;
  double far_left = 0.0;
  double far_right = 0.0;

  int size() const { return static_cast<int>(values.size()); }
  double x(int i) const { return x0 + i * dx; }

  double node_or_far(int i) const {
    if (i < 0) return far_left;
    if (i >= size()) return far_right;
    return values[static_cast<std::size_t>(i)];
  }

  /// Piecewise-cubic interpolation with constant extension outside the grid.
  double value_at(double xq) const {
    const double r = (xq - x0) / dx;
    if (r <= 0.0) return far_left;
    if (r >= size() - 1) return far_right;
    const int i = static_cast<int>(std::floor(r));
    double w[4];
    cubic_weights(r - i, w);
    return w[0] * node_or_far(i - 1) + w[1] * node_or_far(i) + w[2] * node_or_far(i + 1) +
           w[3] * node_or_far(i + 2);
  }

  double sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

} // namespace gb
