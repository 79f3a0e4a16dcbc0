#include "doctest.h"

#include "gburgers/errors.hpp"
#include "gburgers/quadrature.hpp"

#include <cmath>

using namespace gb;

TEST_CASE("gauss_hermite integrates Gaussian moments exactly") {
  const QuadratureRule& gh = gauss_hermite(60);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    const double x = gh.nodes[k];
    m0 += gh.weights[k];
    m2 += gh.weights[k] * x * x;
    m4 += gh.weights[k] * x * x * x * x;
  }
  const double sp = std::sqrt(M_PI);
  CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(0.5 * sp).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(0.75 * sp).epsilon(1e-13));
}

TEST_CASE("gauss_hermite nodes are symmetric") {
  const QuadratureRule& gh = gauss_hermite(33);
  const std::size_t n = gh.nodes.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    CHECK(gh.nodes[k] == doctest::Approx(-gh.nodes[n - 1 - k]).epsilon(1e-14));
    CHECK(gh.weights[k] == doctest::Approx(gh.weights[n - 1 - k]).epsilon(1e-14));
  }
  CHECK(gh.nodes[n / 2] == 0.0);
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  const QuadratureRule& gl = gauss_legendre(16);
  double m0 = 0.0, m6 = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    m0 += gl.weights[k];
    m6 += gl.weights[k] * std::pow(gl.nodes[k], 6);
  }
  CHECK(m0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m6 == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("integrate_panels handles a smooth integrand") {
  const double v = integrate_panels([](double x) { return std::sin(x); }, 0.0, M_PI, 8);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.hermite_order = 4;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = QuadratureSpec{};
  q.tail_epsilon = 1e-3;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}
