#include "gburgers/quadrature.hpp"

#include "gburgers/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gb {

void QuadratureSpec::validate() const {
  if (hermite_order < 8) throw ConfigError("hermite_order must be >= 8");
  if (panel_count < 1) throw ConfigError("panel_count must be positive");
  if (!(tail_epsilon > 0.0) || tail_epsilon > 1e-6)
    throw ConfigError("tail_epsilon must lie in (0, 1e-6]");
}

namespace {

// Nodes and weights by Newton iteration on the orthonormal Hermite
// recurrence (weight exp(-x^2)).
QuadratureRule make_hermite(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pim4 = 0.751125544464942482; // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[n - 1];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[n - 2];
    } else {
      z = 2.0 * z - rule.nodes[n - i + 1];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    rule.nodes[n - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[n - 1 - i] = 2.0 / (pp * pp);
    rule.weights[i] = rule.weights[n - 1 - i];
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule make_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

template <QuadratureRule (*Maker)(int)>
const QuadratureRule& cached(int order) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, Maker(order)).first;
  return it->second;
}

} // namespace

const QuadratureRule& gauss_hermite(int order) {
  if (order < 1) throw ConfigError("gauss_hermite: order must be positive");
  return cached<make_hermite>(order);
}

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) throw ConfigError("gauss_legendre: order must be positive");
  return cached<make_legendre>(order);
}

double gaussian_cutoff(double tail_epsilon) {
  // erfc(L) <= eps  <=>  L ~ sqrt(-log(eps)); pad by 2 for the prefactor.
  return std::sqrt(-std::log(tail_epsilon)) + 2.0;
}

} // namespace gb
