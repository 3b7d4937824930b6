#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracmean/complex.hpp"
#include "fracmean/distributions.hpp"
#include "fracmean/montecarlo.hpp"
#include "fracmean/quadrature.hpp"

namespace fracmean {

enum class Method { Closed, QuadNeg, QuadPos, MonteCarlo };

const char* to_string(Method m) noexcept;

struct EstimateMeta {
  std::string route;  // route actually taken, "auto->..." when chosen
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> evaluations;
  std::optional<QuadratureConfig> quadrature;
  std::string note;
};

struct MomentEstimate {
  Complex value;
  double uncertainty = 0.0;  // stderr (MC), error estimate (quadrature), 0 (closed)
  Method method = Method::Closed;
  EstimateMeta meta;
};

struct RouteConfig {
  QuadratureConfig quad;
  MCConfig mc;
};

enum class Route { Closed, Quad, MonteCarlo, Auto };

const char* to_string(Route r) noexcept;

// ---- fractional moments E[(Z + alpha)^lambda] ----

MomentEstimate frac_moment_closed(const DistributionModel& m, Complex alpha, Complex lambda);

// Riemann-Liouville route, Re(lambda) < 0.
MomentEstimate frac_moment_neg(const DistributionModel& m, Complex alpha,
                               const FracOrder& lambda, const QuadratureConfig& cfg);

// Marchaud route, Re(lambda) > 0 and not an integer.
MomentEstimate frac_moment_pos(const DistributionModel& m, Complex alpha,
                               const FracOrder& lambda, const QuadratureConfig& cfg);

MomentEstimate frac_moment_mc(const DistributionModel& m, Complex alpha, Complex lambda,
                              const MCConfig& mc);

// Dispatch by route; Quad picks neg/pos by the sign of Re(lambda), Auto
// tries Closed, then Quad, then MonteCarlo.
MomentEstimate fractional_moment(const DistributionModel& m, Complex alpha, Complex lambda,
                                 Route route, const RouteConfig& cfg);

// ---- power means ----

struct PowerMeanSpec {
  double p = 1.0;  // in [-1, 1]
  int n = 2;
  Complex alpha = 0.0;

  void validate() const;
};

// ((1/n) sum z_j^p)^{1/p}; product of z_j^{1/n} at p = 0.
// DomainError on a zero input when p < 0.
Complex power_mean(std::span<const Complex> values, double p);

// E[M] for M the power mean of n i.i.d. copies of Z + alpha. Route::Quad
// means the fractional-derivative route on the n-th power of the
// single-draw transform.
MomentEstimate power_mean_expectation(const DistributionModel& m, const PowerMeanSpec& spec,
                                      Route route, const RouteConfig& cfg);

// (p^k Gamma(k - 1/p) / Gamma(-1/p), prod_{j<k} (jp - 1)).
std::pair<Complex, Complex> t3_product_identity(double p, int k);

// Closed power-mean expectation of the scaled t3 law at w = gamma + alpha,
// p < 0: w sum_k C(n,k) (i sigma / (n w))^k prod_{j<k} (jp - 1).
Complex t3_power_mean(Complex w, double sigma, int n, double p);

// Coefficients c_0..c_{n-1} of the same quantity as a polynomial in p.
std::vector<Complex> t3_power_mean_coefficients(Complex w, double sigma, int n);

struct ScanRow {
  double p = 0.0;
  std::optional<MomentEstimate> estimate;
  std::string error;  // set when the point failed
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double max_jump = 0.0;              // max |E(p_{i+1}) - E(p_i)| over valid neighbours
  double jump_uncertainty = 0.0;      // sqrt(u_i^2 + u_{i+1}^2) at that pair
  double max_jump_ratio = 0.0;        // max of jump / combined uncertainty
};

// Power-mean expectations along a grid of p. Monte Carlo points share
// one seed so neighbouring values use common random numbers.
ScanResult continuity_scan(const DistributionModel& m, Complex alpha, int n,
                           const std::vector<double>& p_grid, Route route,
                           const RouteConfig& cfg);

}  // namespace fracmean
