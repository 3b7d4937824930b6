#include <doctest.h>

#include <cmath>

#include "fracmean/error.hpp"
#include "fracmean/frac_moment.hpp"

using namespace fracmean;

namespace {
bool rel_near(Complex got, Complex want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

RouteConfig mc_cfg(std::uint64_t seed, std::size_t n) {
  RouteConfig rc;
  rc.mc.seed = seed;
  rc.mc.samples = n;
  return rc;
}
}  // namespace

TEST_SUITE("frac_moment") {
  // Oracles below are direct numerical integrals against the densities
  // (mpmath, 30 digits), frozen here.
  TEST_CASE("cauchy moment with complex order and shift") {
    Complex alpha{0.5, 1.5}, lambda{-0.7, 0.4};
    Complex want{0.249649048284209637, -0.166078636300841101};
    CHECK(rel_near(frac_moment_closed(Cauchy{}, alpha, lambda).value, want, 1e-14));
    CHECK(rel_near(frac_moment_neg(Cauchy{}, alpha, FracOrder(lambda), {}).value, want, 1e-8));
  }

  TEST_CASE("t3 moments against direct integration") {
    ScaledT3 t{0.3, 1.0};
    struct Row {
      Complex lambda, want;
    };
    for (Row r : {Row{-0.5, {0.679936440464869230, -0.551518412052780733}},
                  Row{1.5, {-0.140725701542623814, 0.817192586282244508}},
                  Row{{-0.3, 0.8}, {0.323003235542559943, -0.052248562206511407}}}) {
      CHECK(rel_near(frac_moment_closed(t, kI, r.lambda).value, r.want, 1e-13));
      MomentEstimate q = fractional_moment(t, kI, r.lambda, Route::Quad, {});
      CHECK(rel_near(q.value, r.want, 1e-7));
    }
  }

  TEST_CASE("poincare moments against direct integration") {
    Poincare d{2.0, 1.0, 1.0};
    Complex w05{0.321797126452791, 0.776886987015021};
    Complex wm05{0.455089860562227, -1.09868411346781};
    CHECK(rel_near(frac_moment_closed(d, 0.0, 0.5).value, w05, 1e-12));
    CHECK(rel_near(frac_moment_pos(d, 0.0, FracOrder(0.5), {}).value, w05, 1e-8));
    CHECK(rel_near(frac_moment_neg(d, 0.0, FracOrder(-0.5), {}).value, wm05, 1e-8));
  }

  TEST_CASE("negative route table") {
    for (Complex l : {Complex{-0.25}, Complex{-0.5}, Complex{-0.9}, Complex{-0.5, 0.3}}) {
      MomentEstimate e = frac_moment_neg(Cauchy{}, kI, FracOrder(l), {});
      CHECK(rel_near(e.value, principal_pow(Complex{0.0, 2.0}, l), 1e-6));
      CHECK(e.method == Method::QuadNeg);
      CHECK(e.meta.evaluations.has_value());
    }
  }

  TEST_CASE("positive route, integer part through derivatives") {
    for (double l : {0.5, 1.5, 2.5}) {
      MomentEstimate e = frac_moment_pos(Poincare{1.0, 0.0, 1.0}, 0.0, FracOrder(l), {});
      CHECK(rel_near(e.value, principal_pow(kI, l), 1e-8));
    }
  }

  TEST_CASE("discrete law on the real line uses its atoms") {
    TwoPoint t{Complex{1.0, 0.0}, Complex{-2.0, 0.0}, 0.3};
    Complex alpha{0.0, 0.5};
    for (Complex l : {Complex{0.5}, Complex{-0.6, 0.2}, Complex{1.3}}) {
      Complex want = 0.3 * principal_pow(Complex{1.0, 0.5}, l) + 0.7 * principal_pow(Complex{-2.0, 0.5}, l);
      CHECK(rel_near(fractional_moment(t, alpha, l, Route::Quad, {}).value, want, 1e-8));
      CHECK(rel_near(fractional_moment(t, alpha, l, Route::Closed, {}).value, want, 1e-14));
    }
  }

  TEST_CASE("monte carlo agrees with closed") {
    MomentEstimate e = frac_moment_mc(Poincare{1.0, 0.0, 1.0}, 0.0, 0.5, mc_cfg(3, 100000).mc);
    CHECK(std::abs(e.value - principal_pow(kI, 0.5)) < 4.0 * e.uncertainty);
    CHECK(e.meta.seed == 3u);
    CHECK(e.meta.samples == 100000u);
  }

  TEST_CASE("auto route falls back and reports the choice") {
    MomentEstimate e = fractional_moment(Cauchy{}, kI, -0.5, Route::Auto, {});
    CHECK(e.method == Method::Closed);
    CHECK(e.meta.route.rfind("auto->", 0) == 0);
  }

  TEST_CASE("moment errors") {
    CHECK_THROWS_AS(fractional_moment(Cauchy{}, kI, 1.5, Route::Closed, {}), MomentError);
    CHECK_THROWS_AS(fractional_moment(Cauchy{}, kI, 1.5, Route::Auto, {}), MomentError);
    CHECK_THROWS_AS(fractional_moment(ScaledT3{}, kI, 3.2, Route::Quad, {}), MomentError);
  }

  TEST_CASE("power mean of a sample") {
    std::vector<Complex> v{{1.0, 1.0}, {2.0, 0.5}};
    CHECK(std::abs(power_mean(v, 1.0) - Complex{1.5, 0.75}) < 1e-15);
    Complex h = 2.0 / (1.0 / v[0] + 1.0 / v[1]);
    CHECK(std::abs(power_mean(v, -1.0) - h) < 1e-15);
    Complex g = principal_pow(v[0], 0.5) * principal_pow(v[1], 0.5);
    CHECK(std::abs(power_mean(v, 0.0) - g) < 1e-15);
  }

  TEST_CASE("power mean of a two-point law by enumeration") {
    TwoPoint t{Complex{1.0, 1.0}, Complex{-2.0, 0.5}, 0.3};
    struct Row {
      double p;
      int n;
      Complex want;
    };
    for (Row r : {Row{0.5, 3, {-1.08761918797331, 0.900745761932726}},
                  Row{-0.7, 2, {-0.998125538705471, 1.40929670165588}},
                  Row{0.0, 3, {-1.101516727407, 1.15216421667544}}}) {
      MomentEstimate e = power_mean_expectation(t, {r.p, r.n, 0.0}, Route::Closed, {});
      CHECK(rel_near(e.value, r.want, 1e-12));
    }
  }

  TEST_CASE("cauchy power mean is gamma + alpha") {
    for (double p : {-1.0, -0.5, 0.0}) {
      MomentEstimate e = power_mean_expectation(Cauchy{0.3, 2.0}, {p, 3, kI}, Route::Closed, {});
      CHECK(std::abs(e.value - Complex{0.3, 3.0}) < 1e-14);
    }
    MomentEstimate q = power_mean_expectation(Cauchy{}, {-0.5, 3, kI}, Route::Quad, {});
    CHECK(rel_near(q.value, Complex{0.0, 2.0}, 1e-8));
    CHECK_THROWS_AS(power_mean_expectation(Cauchy{}, {0.5, 2, kI}, Route::Closed, {}), MomentError);
  }

  TEST_CASE("t3 power mean against a double integral") {
    // sigma = 1, mu = 0, alpha = i, p = -1/2, n = 2
    MomentEstimate a = power_mean_expectation(ScaledT3{}, {-0.5, 2, kI}, Route::Closed, {});
    CHECK(rel_near(a.value, Complex{0.0, 1.1875}, 1e-14));
    // sigma = 2, mu = 0.3, alpha = i/2
    MomentEstimate b = power_mean_expectation(ScaledT3{0.3, 2.0}, {-0.5, 2, Complex{0.0, 0.5}}, Route::Closed, {});
    CHECK(rel_near(b.value, Complex{0.229022082018928, 1.09148264984227}, 1e-9));
    MomentEstimate q = power_mean_expectation(ScaledT3{0.3, 2.0}, {-0.5, 2, Complex{0.0, 0.5}}, Route::Quad, {});
    CHECK(rel_near(q.value, b.value, 1e-7));
  }

  TEST_CASE("t3 polynomial coefficients reproduce the sum") {
    Complex w{0.4, 1.7};
    auto c = t3_power_mean_coefficients(w, 1.3, 4);
    REQUIRE(c.size() == 4);
    for (double p : {-0.9, -0.4, -0.05}) {
      Complex poly = 0.0, pk = 1.0;
      for (Complex ck : c) {
        poly += ck * pk;
        pk *= p;
      }
      CHECK(rel_near(poly, t3_power_mean(w, 1.3, 4, p), 1e-13));
    }
  }

  TEST_CASE("t3 product identity") {
    for (double p : {-0.9, -0.5, -0.2, -0.05})
      for (int k = 0; k <= 6; ++k) {
        auto [lhs, rhs] = t3_product_identity(p, k);
        CHECK(rel_near(lhs, rhs, 1e-10));
      }
  }

  TEST_CASE("poincare power means are the gamma point on every route") {
    Poincare d{2.0, 1.0, 1.0};
    Complex g{-0.5, 0.5};
    for (double p : {-1.0, -0.5, 0.0, 0.3, 0.5, 1.0}) {
      CHECK(std::abs(power_mean_expectation(d, {p, 3, 0.0}, Route::Closed, {}).value - g) < 1e-14);
      CHECK(rel_near(power_mean_expectation(d, {p, 3, 0.0}, Route::Quad, {}).value, g, 1e-8));
    }
    MomentEstimate mc = power_mean_expectation(d, {0.5, 2, 0.0}, Route::MonteCarlo, mc_cfg(1, 50000));
    CHECK(std::abs(mc.value - g) < 4.0 * mc.uncertainty);
  }

  TEST_CASE("power mean spec validation") {
    CHECK_THROWS_AS(PowerMeanSpec({1.5, 2, 0.0}).validate(), ConfigError);
    CHECK_THROWS_AS(PowerMeanSpec({0.5, 0, 0.0}).validate(), ConfigError);
  }

  TEST_CASE("continuity scan with common random numbers") {
    std::vector<double> grid{-0.2, -0.1, 0.0, 0.1, 0.2};
    ScanResult s = continuity_scan(Poincare{1.0, 0.0, 1.0}, 0.0, 2, grid, Route::MonteCarlo, mc_cfg(7, 20000));
    REQUIRE(s.rows.size() == 5);
    for (const auto& r : s.rows) CHECK(r.estimate.has_value());
    CHECK(s.max_jump_ratio <= 4.0);
    ScanResult again = continuity_scan(Poincare{1.0, 0.0, 1.0}, 0.0, 2, grid, Route::MonteCarlo, mc_cfg(7, 20000));
    CHECK(again.max_jump == s.max_jump);
  }
}
