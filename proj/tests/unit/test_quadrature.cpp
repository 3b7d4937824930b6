#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracmean/complex.hpp"
#include "fracmean/error.hpp"
#include "fracmean/quadrature.hpp"

using namespace fracmean;

TEST_SUITE("quadrature") {
  TEST_CASE("tanh-sinh handles an endpoint singularity") {
    QuadratureConfig cfg;
    IntegralResult r = tanh_sinh_left([](double t) { return Complex{1.0 / std::sqrt(t)}; }, 1.0, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-10);
  }

  TEST_CASE("gauss-kronrod on a smooth oscillatory integrand") {
    IntegralResult r = gauss_kronrod([](double t) { return std::exp(Complex{0.0, 3.0 * t}); }, 0.0, 2.0, 1e-13, 30);
    Complex want = (std::exp(Complex{0.0, 6.0}) - 1.0) / Complex{0.0, 3.0};
    CHECK(std::abs(r.value - want) < 1e-12);
  }

  TEST_CASE("singular decaying integral gives Gamma") {
    QuadratureConfig cfg;
    for (double s : {-0.5, -0.9, 0.3, 2.5}) {
      IntegralResult r = integrate_singular_decaying([](double t) { return Complex{std::exp(-t)}; }, s, cfg);
      CHECK(std::abs(r.value - fracmean::gamma(s + 1.0)) < 1e-9 * std::abs(fracmean::gamma(s + 1.0)));
    }
  }

  TEST_CASE("singular decaying integral with oscillation") {
    // int t^{-1/2} e^{-t} e^{it} dt = Gamma(1/2) (1 - i)^{-1/2}
    QuadratureConfig cfg;
    IntegralResult r = integrate_singular_decaying(
        [](double t) { return std::exp(Complex{-t, t}); }, -0.5, cfg);
    Complex want = std::sqrt(std::numbers::pi) * principal_pow(Complex{1.0, -1.0}, -0.5);
    CHECK(std::abs(r.value - want) < 1e-9);
  }

  TEST_CASE("marchaud integral of 1 - e^{-u}") {
    // int (1 - e^{-u}) u^{-1-d} du = Gamma(1 - d) / d
    QuadratureConfig cfg;
    for (double d : {0.2, 0.5, 0.8}) {
      IntegralResult r = integrate_marchaud(1.0, [](double u) { return Complex{std::exp(-u)}; }, d, cfg);
      Complex want = fracmean::gamma(1.0 - d) / d;
      CHECK(std::abs(r.value - want) < 1e-9 * std::abs(want));
    }
  }

  TEST_CASE("config validation") {
    QuadratureConfig cfg;
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.max_level = 40;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
