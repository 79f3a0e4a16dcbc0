#pragma once

#include <cstddef>
#include <vector>

namespace gb {

/// Configuration for the Gaussian-weighted and singular-time quadratures.
struct QuadratureSpec {
  int hermite_order = 60;     // nodes for integrals with weight exp(-lambda^2)
  int panel_count = 24;       // panels for split absolute-value integrals
  double tail_epsilon = 1e-12; // truncated Gaussian tail mass

  void validate() const;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule: integrates f(x) exp(-x^2) dx over the real line.
/// Nodes ascending, symmetric about zero. Cached per order.
const QuadratureRule& gauss_hermite(int order);

/// Gauss-Legendre rule on [-1, 1]. Cached per order.
const QuadratureRule& gauss_legendre(int order);

/// Composite Gauss-Legendre integral of f over [a, b] with the given
/// number of equal panels.
template <typename F>
double integrate_panels(F&& f, double a, double b, int panels, int nodes_per_panel = 16) {
  const QuadratureRule& rule = gauss_legendre(nodes_per_panel);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      acc += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    }
    total += 0.5 * h * acc;
  }
  return total;
}

/// Largest |lambda| kept when truncating an exp(-lambda^2)-weighted integral
/// to tail mass below eps.
double gaussian_cutoff(double tail_epsilon);

} // namespace gb
