// Worked examples for each public operation, with values that follow
// from closed forms or elementary identities.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracmean/bounds.hpp"
#include "fracmean/characterize.hpp"
#include "fracmean/distributions.hpp"
#include "fracmean/error.hpp"
#include "fracmean/frac_moment.hpp"
#include "fracmean/montecarlo.hpp"
#include "fracmean/quadrature.hpp"

using namespace fracmean;

namespace {
constexpr double kPi = std::numbers::pi;
const TwoPoint kPointI{kI, kI, 1.0};
const TwoPoint kPointOne{1.0, 1.0, 1.0};

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

MCConfig mc(std::uint64_t seed, std::size_t n) {
  MCConfig c;
  c.seed = seed;
  c.samples = n;
  return c;
}
}  // namespace

TEST_SUITE("examples") {
  TEST_CASE("principal branch") {
    CHECK(close(principal_log(1.0), 0.0));
    CHECK(close(principal_log(-1.0), Complex{0.0, kPi}));
    CHECK(close(principal_log(kI), Complex{0.0, kPi / 2}));
    CHECK(principal_pow(0.0, Complex{0.7, -3.0}) == Complex{0.0});
    CHECK(close(principal_pow(kI, -0.5), Complex{std::sqrt(0.5), -std::sqrt(0.5)}, 1e-15));
    PhiloxStream r(1, 1);
    for (int k = 0; k < 100; ++k) {
      Complex z{r.normal(), r.normal()};
      CHECK(close(principal_pow(z, 1.0), z, 1e-14 * std::abs(z)));
    }
  }

  TEST_CASE("gamma values") {
    CHECK(close(fracmean::gamma(Complex{1.0}), 1.0, 1e-15));
    CHECK(close(fracmean::gamma(Complex{0.5}), std::sqrt(kPi), 1e-14));
    CHECK(close(fracmean::gamma(Complex{-0.5}), -2.0 * std::sqrt(kPi), 1e-14));
  }

  TEST_CASE("power bound constants") {
    CHECK(power_bound_constant(-1.0) == doctest::Approx(1.0));
    CHECK(power_bound_constant(-0.5) == doctest::Approx(1.0));
    // |Gamma(1 - i)| = sqrt(pi / sinh pi)
    double want = std::exp(kPi / 2) / std::sqrt(kPi / std::sinh(kPi));
    CHECK(power_bound_constant(Complex{-1.0, 1.0}) == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("semi-infinite integrals") {
    QuadratureConfig q;
    auto expo = [](double t) { return Complex{std::exp(-t)}; };
    CHECK(close(integrate_singular_decaying(expo, -0.5, q).value, std::sqrt(kPi), 1e-9));
    CHECK(close(integrate_singular_decaying(expo, 0.0, q).value, 1.0, 1e-10));
    Complex osc = integrate_singular_decaying([](double t) { return std::exp(Complex{-t, t}); }, -0.5, q).value;
    CHECK(close(osc, fracmean::gamma(Complex{0.5}) * principal_pow(Complex{1.0, -1.0}, -0.5), 1e-9));
  }

  TEST_CASE("marchaud integrals") {
    QuadratureConfig q;
    auto expo = [](double u) { return Complex{std::exp(-u)}; };
    CHECK(close(integrate_marchaud(1.0, expo, 0.5, q).value, 2.0 * std::sqrt(kPi), 1e-9));
    CHECK(close(integrate_marchaud(1.0, [](double) { return Complex{1.0}; }, 0.5, q).value, 0.0, 1e-12));
    auto via_i = [](double u) { return std::exp(kI * u * kI); };
    CHECK(close(integrate_marchaud(1.0, via_i, 0.3, q).value, fracmean::gamma(Complex{0.7}) / 0.3, 1e-9));
  }

  TEST_CASE("densities") {
    CHECK(density(Cauchy{}, 0.0) == doctest::Approx(1.0 / kPi));
    CHECK(density(ScaledT3{}, 0.0) == doctest::Approx(2.0 / kPi));
    // D e^{2D} / pi * e^{-(a(x^2+y^2)+2bx+c)/y} / y^2 at (0, 1): e^2 e^{-2} / pi
    CHECK(density(Poincare{}, kI) == doctest::Approx(1.0 / kPi));
  }

  TEST_CASE("characteristic functions") {
    CHECK(close(char_fn(Poincare{}, 1.0), std::exp(-1.0), 1e-15));
    for (DistributionModel m : {DistributionModel{Cauchy{}}, DistributionModel{ScaledT3{}}, DistributionModel{Poincare{}},
                                DistributionModel{kPointI}})
      CHECK(close(char_fn(m, 0.0), 1.0, 0.0));
    CHECK(close(char_fn(ScaledT3{}, 1.0), 2.0 / std::exp(1.0), 1e-15));
    // numerical Fourier integral of the t3 density at t = 1
    double h = 0.005, s = 0.0;
    for (double x = -3000.0; x <= 3000.0; x += h) s += density(ScaledT3{}, x) * std::cos(x);
    CHECK(std::abs(s * h - 2.0 / std::exp(1.0)) < 1e-8);
  }

  TEST_CASE("characteristic function derivatives") {
    CHECK(close(char_fn_derivative(ScaledT3{}, 0, 0.4, Sign::PlusI), char_fn(ScaledT3{}, 0.4), 0.0));
    CHECK(close(char_fn_derivative(Poincare{}, 1, 0.0, Sign::MinusI), 1.0, 1e-14));
    CHECK(close(char_fn_derivative(TwoPoint{1.0, -1.0, 0.5}, 2, 0.0, Sign::MinusI), -1.0, 1e-15));
  }

  TEST_CASE("samplers") {
    const std::size_t n = 100000;
    auto c = sample(Cauchy{}, 17, n);
    std::vector<double> re;
    for (Complex z : c) re.push_back(z.real());
    std::nth_element(re.begin(), re.begin() + n / 2, re.end());
    CHECK(std::abs(re[n / 2]) <= 4.0 * (kPi / 2.0) / std::sqrt(double(n)));

    auto p = sample(Poincare{}, 18, 1000000);
    ComplexAccumulator acc;
    for (Complex z : p) acc.add(z);
    CHECK(std::abs(acc.mean() - kI) <= 4.0 * acc.standard_error());

    auto t = sample(ScaledT3{}, 19, n);
    std::vector<double> xs;
    double mean = 0.0, absm = 0.0;
    for (Complex z : t) {
      xs.push_back(z.real());
      mean += z.real();
      absm += std::abs(z.real());
    }
    CHECK(std::abs(mean / n) < 0.02);
    CHECK(absm / n == doctest::Approx(2.0 / kPi).epsilon(0.03));  // E|X| = 2/pi
    std::sort(xs.begin(), xs.end());
    auto cdf = [](double x) { return 0.5 + (std::atan(x) + x / (1.0 + x * x)) / kPi; };
    double ks = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double f = cdf(xs[k]);
      ks = std::max({ks, std::abs(f - double(k) / n), std::abs(f - double(k + 1) / n)});
    }
    CHECK(ks <= 1.63 / std::sqrt(double(n)));
  }

  TEST_CASE("power means of values") {
    std::vector<Complex> v{{1.0, 2.0}, {-1.0, 0.5}, {0.3, 0.3}};
    CHECK(close(power_mean(v, 1.0), (v[0] + v[1] + v[2]) / 3.0, 1e-15));
    for (double p : {-1.0, -0.3, 0.0, 0.6}) CHECK(close(power_mean(std::vector<Complex>{v[1]}, p), v[1], 1e-15));
    CHECK(close(power_mean(std::vector<Complex>{kI, kI}, -0.5), kI, 1e-15));
  }

  TEST_CASE("fractional moments") {
    CHECK(close(fractional_moment(Cauchy{}, kI, -0.5, Route::Auto, {}).value, Complex{0.5, -0.5}, 1e-15));
    CHECK(close(fractional_moment(Poincare{}, 0.0, -1.0, Route::Quad, {}).value, -kI, 1e-9));
    CHECK(close(frac_moment_closed(ScaledT3{}, kI, -0.5).value, Complex{0.625, -0.625}, 1e-15));
    CHECK(close(frac_moment_pos(Poincare{}, 0.0, FracOrder(0.5), {}).value, std::polar(1.0, kPi / 4), 1e-9));
    CHECK(close(frac_moment_pos(kPointOne, 0.0, FracOrder(0.5), {}).value, 1.0, 1e-9));
    Complex want = principal_pow(Complex{-0.5, 0.5}, 0.5);
    CHECK(close(frac_moment_pos(Poincare{2.0, 1.0, 1.0}, 0.0, FracOrder(0.5), {}).value, want, 1e-9));
    for (DistributionModel m : {DistributionModel{Cauchy{}}, DistributionModel{ScaledT3{}}, DistributionModel{Poincare{}}})
      CHECK(close(fractional_moment(m, kI, 0.0, Route::Auto, {}).value, 1.0, 1e-15));
  }

  TEST_CASE("monte carlo moments") {
    MomentEstimate pm = frac_moment_mc(kPointI, 0.0, 2.0, mc(1, 1000));
    CHECK(close(pm.value, -1.0, 1e-15));
    CHECK(pm.uncertainty == 0.0);
    MomentEstimate c = frac_moment_mc(Cauchy{}, kI, -1.0, mc(2, 100000));
    CHECK(std::abs(c.value - Complex{0.0, -0.5}) <= 4.0 * c.uncertainty);
    MomentEstimate p = frac_moment_mc(Poincare{}, 0.0, 0.5, mc(3, 100000));
    CHECK(std::abs(p.value - std::polar(1.0, kPi / 4)) <= 4.0 * p.uncertainty);
    MomentEstimate t = frac_moment_mc(ScaledT3{}, kI, -0.5, mc(4, 100000));
    CHECK(std::abs(t.value - Complex{0.625, -0.625}) <= 4.0 * t.uncertainty);
  }

  TEST_CASE("power mean expectations") {
    CHECK(close(power_mean_expectation(Cauchy{}, {-0.5, 3, kI}, Route::Closed, {}).value, Complex{0.0, 2.0}, 1e-15));
    CHECK(close(power_mean_expectation(Poincare{}, {0.5, 2, 0.0}, Route::Closed, {}).value, kI, 1e-15));
    // 2i [1 + (1 - p)/8] - 2i... evaluated: i (1 + (1 - p) / 8) at n = 2
    CHECK(close(power_mean_expectation(ScaledT3{}, {-0.5, 2, kI}, Route::Closed, {}).value, Complex{0.0, 1.1875}, 1e-14));
    for (double p : {-1.0, -0.4, 0.0, 0.7})
      CHECK(close(power_mean_expectation(kPointI, {p, 4, 0.0}, Route::Closed, {}).value, kI, 1e-14));
  }

  TEST_CASE("product identity small k") {
    auto [a0, b0] = t3_product_identity(-0.4, 0);
    CHECK(close(a0, 1.0, 1e-15));
    CHECK(close(b0, 1.0, 1e-15));
    auto [a1, b1] = t3_product_identity(-0.4, 1);
    CHECK(close(a1, -1.0, 1e-14));
    CHECK(close(b1, -1.0, 1e-15));
    auto [a3, b3] = t3_product_identity(-0.4, 3);
    CHECK(std::abs(a3 - b3) <= 1e-10 * std::abs(b3));
  }

  TEST_CASE("scans") {
    std::vector<double> grid;
    for (int k = -9; k <= -1; ++k) grid.push_back(0.1 * k);
    ScanResult t = continuity_scan(ScaledT3{}, kI, 2, grid, Route::Closed, {});
    for (const auto& row : t.rows) CHECK(close(row.estimate->value, Complex{0.0, 1.0 + (1.0 - row.p) / 8.0}, 1e-14));
    ScanResult pt = continuity_scan(kPointI, 0.0, 3, grid, Route::Closed, {});
    for (const auto& row : pt.rows) CHECK(close(row.estimate->value, kI, 1e-14));
  }

  TEST_CASE("moment function and distinguisher") {
    CHECK(close(moment_function(Cauchy{}, kI, -0.5, Route::Closed, {}).value, Complex{0.5, -0.5}, 1e-15));
    CHECK(close(moment_function(ScaledT3{}, kI, -0.5, Route::Closed, {}).value, Complex{0.625, -0.625}, 1e-15));
    CHECK(distinguish(Cauchy{}, Cauchy{}, FixAlpha{kI, {Complex{-0.5}}}, Route::Closed, {}).max_discrepancy == 0.0);
    DistinguishReport d = distinguish(Cauchy{}, Cauchy{0.0, 1.1}, FixLambda{-1.0, {kI, 2.0 * kI, 3.0 * kI}},
                                      Route::Closed, {});
    REQUIRE(d.points.size() == 3);
    for (const auto& pt : d.points) {
      Complex want = 1.0 / Complex{0.0, 1.0 + pt.alpha.imag()} - 1.0 / Complex{0.0, 1.1 + pt.alpha.imag()};
      CHECK(pt.discrepancy == doctest::Approx(std::abs(want)).epsilon(1e-12));
      CHECK(pt.discrepancy > 0.0);
    }
  }

  TEST_CASE("absolute-moment bounds") {
    for (double p : {0.2, 0.5, 0.9}) {
      BoundReport r = half_plane_bound_check(TwoPoint{1.0, -1.0, 0.5}, p, Estimator::Closed, {});
      CHECK(r.abs_moment == doctest::Approx(1.0));
      CHECK(r.moment_abs == doctest::Approx(std::cos(p * kPi / 2)));
      CHECK(r.bound == doctest::Approx(1.0));
      CHECK(r.satisfied);
    }
    for (double p : {-0.5, 0.3, 0.8}) {
      BoundReport r = half_plane_bound_check(kPointI, p, Estimator::Closed, {});
      CHECK(r.abs_moment == doctest::Approx(1.0));
      CHECK(r.moment_abs == doctest::Approx(1.0));
      CHECK(r.satisfied);
      CHECK(half_plane_bound_check(kPointOne, p, Estimator::Closed, {}).satisfied);
    }
    BoundReport pm = half_plane_bound_check(Poincare{}, 0.5, Estimator::Closed, mc(5, 50000));
    CHECK(pm.moment_abs == doctest::Approx(1.0));
    CHECK(pm.abs_method == "mc");
    CHECK(pm.satisfied);
    BoundReport g = general_bound_check(TwoPoint{1.0, -1.0, 0.5}, 0.25, Estimator::Closed, {});
    CHECK(g.bound == doctest::Approx(std::cos(kPi / 8) / std::cos(kPi / 4)));
    CHECK(g.satisfied);
  }

  TEST_CASE("geometric strong law") {
    SllnTrajectory pt = geometric_slln_demo(kPointI, 1000, 1, 10);
    for (const auto& s : pt.points) CHECK(close(s.running, kI, 1e-12));
    SllnTrajectory p = geometric_slln_demo(Poincare{}, 100000, 7, 20);
    CHECK(std::abs(p.points.back().running - kI) < 0.05);
    CHECK(close(geometric_target(Poincare{2.0, 1.0, 1.0}), Complex{-0.5, 0.5}, 1e-15));
  }
}
