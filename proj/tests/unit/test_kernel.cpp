#include "doctest.h"

#include "gburgers/errors.hpp"
#include "gburgers/kernel.hpp"

#include <cmath>
#include <random>

using namespace gb;

namespace {

double fd_Gs(const KernelPoint& p, double h) {
  KernelPoint a = p, b = p;
  a.s += h;
  b.s -= h;
  return (eval_G(a) - eval_G(b)) / (2.0 * h);
}

double fd_Gss(const KernelPoint& p, double h) {
  KernelPoint a = p, b = p;
  a.s += h;
  b.s -= h;
  return (eval_G(a) - 2.0 * eval_G(p) + eval_G(b)) / (h * h);
}

} // namespace

TEST_CASE("eval_G matches the closed form") {
  CHECK(eval_G({0, 1, 0, 0}) == doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-12));
  CHECK(eval_G({2, 1, 0, 0}) ==
        doctest::Approx(std::exp(-1.0) / std::sqrt(4.0 * M_PI)).epsilon(1e-12));
  // symmetric in x <-> s
  CHECK(eval_G({0.7, 2.0, -0.3, 0.5}) == eval_G({-0.3, 2.0, 0.7, 0.5}));
  CHECK(eval_G({1, 1, 0, 0}) > 0.0);
}

TEST_CASE("eval_G rejects bad arguments") {
  CHECK_THROWS_AS(eval_G({0, 1, 0, 1}), DomainError);
  CHECK_THROWS_AS(eval_G({0, 1, 0, 2}), DomainError);
  CHECK_THROWS_AS(eval_G({std::nan(""), 1, 0, 0}), DomainError);
}

TEST_CASE("eval_Gs: oddness and finite-difference oracle") {
  CHECK(eval_Gs({1, 2, 1, 0}) == 0.0);
  CHECK(eval_Gs({1, 1, 0, 0}) == doctest::Approx(0.1098478).epsilon(1e-6));
  CHECK(eval_Gs({1, 1, 0, 0}) == doctest::Approx(fd_Gs({1, 1, 0, 0}, 1e-5)).epsilon(1e-6));
  CHECK(eval_Gs({0, 1, 1, 0}) == doctest::Approx(-eval_Gs({2, 1, 1, 0})).epsilon(1e-12));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const double x = -3.0 + 6.0 * (rng() % 1000) / 999.0;
    const double dt = 0.1 + 2.0 * (rng() % 1000) / 999.0;
    KernelPoint p{x, dt, 0.0, 0.0};
    CHECK(eval_Gs(p) == doctest::Approx(fd_Gs(p, 1e-5)).epsilon(1e-5));
  }
}

TEST_CASE("eval_Gss: closed form and oracle") {
  CHECK(eval_Gss({0, 1, 0, 0}) == doctest::Approx(-0.5 / std::sqrt(4.0 * M_PI)).epsilon(1e-9));
  // zeros at |x - s| = sqrt(2 dt)
  CHECK(eval_Gss({std::sqrt(2.0), 1, 0, 0}) == doctest::Approx(0.0).epsilon(1e-14));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const double x = -3.0 + 6.0 * (rng() % 1000) / 999.0;
    const double dt = 0.2 + 2.0 * (rng() % 1000) / 999.0;
    KernelPoint p{x, dt, 0.1, 0.0};
    const double ref = fd_Gss(p, 1e-4);
    CHECK(eval_Gss(p) == doctest::Approx(ref).epsilon(1e-5));
  }
}

TEST_CASE("Appendix identities hold across the dt range") {
  for (double dt : {1e-4, 1e-2, 1.0, 4.0, 0.25, 1e2}) {
    CHECK(std::abs(integral_G(dt) - 1.0) <= 1e-10);
    CHECK(std::abs(integral_absGs(dt) * std::sqrt(M_PI * dt) - 1.0) <= 1e-7);
    const GssIntegrals g = integral_Gss_signed_and_abs(dt);
    CHECK(std::abs(g.signed_value) <= 1e-8);
  }
  CHECK(integral_absGs(1.0) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(integral_absGs(4.0) == doctest::Approx(0.2820948).epsilon(1e-6));
  CHECK(integral_absGs(0.25) == doctest::Approx(1.1283792).epsilon(1e-6));
}

TEST_CASE("|G_ss| integral scales as 1/dt") {
  const double ref = integral_Gss_signed_and_abs(1.0).absolute;
  CHECK(ref == doctest::Approx(0.48394144903828670).epsilon(1e-10)); // high-precision oracle
  for (double dt : {1e-2, 1e-4, 10.0}) {
    const double scaled = integral_Gss_signed_and_abs(dt).absolute * dt;
    CHECK(std::abs(scaled - ref) <= 1e-6);
  }
}

TEST_CASE("identity integrals reject dt <= 0") {
  CHECK_THROWS_AS(integral_G(0.0), DomainError);
  CHECK_THROWS_AS(integral_absGs(-1.0), DomainError);
  CHECK_THROWS_AS(integral_Gss_signed_and_abs(0.0), DomainError);
}

TEST_CASE("Holder constants: degenerate samples and stability") {
  CHECK_THROWS_AS(fit_holder_constants(0.0, 10), DomainError);
  CHECK_THROWS_AS(fit_holder_constants(1.0, 10), DomainError);

  // identical arguments make every difference vanish
  const double zero = integrate_panels(
      [](double s) {
        return std::abs(eval_G({0.3, 1.0, s, 0.0}) - eval_G({0.3, 1.0, s, 0.0}));
      },
      -10.0, 10.0, 8);
  CHECK(zero == 0.0);

  const HolderFit a = fit_holder_constants(0.5, 250, {}, 11);
  const HolderFit b = fit_holder_constants(0.5, 500, {}, 12);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::isfinite(a.as_array()[i]));
    CHECK(a.as_array()[i] > 0.0);
    const double rel = std::abs(a.as_array()[i] - b.as_array()[i]) /
                       std::max(a.as_array()[i], b.as_array()[i]);
    CHECK(rel <= 0.25);
  }
}
