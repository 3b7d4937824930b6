#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracmean/distributions.hpp"
#include "fracmean/error.hpp"
#include "fracmean/montecarlo.hpp"

using namespace fracmean;

namespace {
constexpr double kPi = std::numbers::pi;

// Trapezoid on a wide grid; enough for densities with polynomial tails.
double integrate_line(const DistributionModel& m, double lo, double hi, int n) {
  double h = (hi - lo) / n, s = 0.0;
  for (int k = 0; k <= n; ++k) s += (k == 0 || k == n ? 0.5 : 1.0) * density(m, lo + k * h);
  return s * h;
}
}  // namespace

TEST_SUITE("distributions") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(Cauchy{0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate(ScaledT3{0.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(validate(Poincare{1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(TwoPoint{1.0, 2.0, 1.5}), ConfigError);
    CHECK_THROWS_AS(validate(Empirical{}), ConfigError);
    CHECK_NOTHROW(validate(Poincare{2.0, 1.0, 1.0}));
  }

  TEST_CASE("gamma point") {
    CHECK(gamma_point(Cauchy{0.5, 2.0}) == Complex{0.5, 2.0});
    Complex g = gamma_point(Poincare{2.0, 1.0, 1.0});
    CHECK(g.real() == doctest::Approx(-0.5));
    CHECK(g.imag() == doctest::Approx(0.5));
    CHECK_THROWS_AS(gamma_point(TwoPoint{1.0, 2.0, 0.5}), PreconditionError);
  }

  TEST_CASE("line densities integrate to one") {
    CHECK(integrate_line(ScaledT3{0.3, 1.0}, -2000.0, 2000.0, 400000) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(integrate_line(Cauchy{0.0, 1.0}, -1e5, 1e5, 2000000) == doctest::Approx(1.0 - 2.0 / (kPi * 1e5)).epsilon(1e-5));
  }

  TEST_CASE("poincare density integrates to one") {
    Poincare d{2.0, 1.0, 1.0};
    double s = 0.0, hx = 0.01, hy = 0.005;
    for (double y = hy / 2; y < 12.0; y += hy)
      for (double x = -12.0; x < 12.0; x += hx) s += density(d, Complex{x, y});
    CHECK(s * hx * hy == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("characteristic functions") {
    CHECK(std::abs(char_fn(Cauchy{0.5, 2.0}, 1.5) - std::exp(Complex{-3.0, 0.75})) < 1e-15);
    double t = 0.7;
    CHECK(std::abs(char_fn(ScaledT3{0.0, 1.0}, t) - (1.0 + t) * std::exp(-t)) < 1e-15);
    // Poincare: E[e^{itZ}] = e^{it gamma} on t >= 0
    Complex phi = char_fn(Poincare{2.0, 1.0, 1.0}, 2.0);
    CHECK(std::abs(phi - std::exp(kI * 2.0 * Complex{-0.5, 0.5})) < 1e-12);
  }

  TEST_CASE("derivatives against finite differences") {
    for (DistributionModel m : {DistributionModel{ScaledT3{0.2, 1.3}}, DistributionModel{Poincare{2.0, 1.0, 1.0}}}) {
      double t = 0.8, h = 1e-5;
      Complex fd = (char_fn_derivative(m, 0, t + h, Sign::PlusI) - char_fn_derivative(m, 0, t - h, Sign::PlusI)) / (2 * h);
      CHECK(std::abs(fd - char_fn_derivative(m, 1, t, Sign::PlusI)) < 1e-8);
    }
  }

  TEST_CASE("moment existence") {
    CHECK_THROWS_AS(char_fn_derivative(Cauchy{}, 1, 1.0, Sign::PlusI), MomentError);
    CHECK_NOTHROW(char_fn_derivative(ScaledT3{}, 2, 1.0, Sign::PlusI));
    CHECK_THROWS_AS(char_fn_derivative(ScaledT3{}, 3, 1.0, Sign::PlusI), MomentError);
    CHECK(has_abs_moment(Cauchy{}, 0.9));
    CHECK_FALSE(has_abs_moment(Cauchy{}, 1.0));
    CHECK(has_abs_moment(ScaledT3{}, 2.9));
    CHECK_FALSE(has_abs_moment(ScaledT3{}, 3.0));
  }

  TEST_CASE("sample means match the law") {
    // Poincare has finite first moment: E[Z] equals the gamma point
    auto xs = sample(Poincare{2.0, 1.0, 1.0}, 4, 200000);
    ComplexAccumulator acc;
    for (Complex z : xs) {
      REQUIRE(z.imag() > 0.0);
      acc.add(z);
    }
    CHECK(std::abs(acc.mean() - Complex{-0.5, 0.5}) < 4.0 * acc.standard_error());

    // t3 has finite variance: E[X] = mu, Var = sigma^2
    auto ts = sample(ScaledT3{0.3, 2.0}, 5, 400000);
    double m = 0.0, v = 0.0;
    for (Complex z : ts) m += z.real();
    m /= ts.size();
    for (Complex z : ts) v += (z.real() - m) * (z.real() - m);
    v /= ts.size();
    CHECK(m == doctest::Approx(0.3).epsilon(0.02));
    CHECK(v == doctest::Approx(4.0).epsilon(0.1));
  }

  TEST_CASE("cauchy sample quartiles") {
    auto xs = sample(Cauchy{1.0, 2.0}, 6, 100000);
    int below = 0;
    for (Complex z : xs) below += z.real() < -1.0;  // mu - sigma is the lower quartile
    CHECK(below / 1e5 == doctest::Approx(0.25).epsilon(0.02));
  }

  TEST_CASE("sampling is deterministic and block-stable") {
    auto a = sample(Cauchy{}, 99, 10000);
    auto b = sample(Cauchy{}, 99, 5000);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(a[k] == b[k]);
  }

  TEST_CASE("discrete laws") {
    TwoPoint t{Complex{1.0, 1.0}, Complex{-2.0, 0.5}, 0.3};
    CHECK(is_discrete(t));
    CHECK(is_upper_supported(t));
    CHECK_FALSE(is_lower_supported(t));
    Complex phi = char_fn(t, 0.4);
    Complex want = 0.3 * std::exp(kI * 0.4 * Complex{1.0, 1.0}) + 0.7 * std::exp(kI * 0.4 * Complex{-2.0, 0.5});
    CHECK(std::abs(phi - want) < 1e-15);
    CHECK_THROWS_AS(density(t, 1.0), DomainError);
  }

  TEST_CASE("shifted transform at zero frequency is the integer moment") {
    // E[(Z + alpha)^1] = gamma + alpha for Poincare
    Complex v = shifted_transform(Poincare{2.0, 1.0, 1.0}, kI, 1, 0.0);
    CHECK(std::abs(v - Complex{-0.5, 1.5}) < 1e-12);
  }
}
