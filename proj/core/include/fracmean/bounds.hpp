#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracmean/distributions.hpp"
#include "fracmean/montecarlo.hpp"

namespace fracmean {

enum class Estimator { Closed, MonteCarlo };

const char* to_string(Estimator e) noexcept;

struct BoundReport {
  double p = 0.0;
  double divisor = 1.0;     // cos(p pi / 2) or cos(p pi)
  double abs_moment = 0.0;  // E|Z|^p
  double moment_abs = 0.0;  // |E[Z^p]|
  double bound = 0.0;       // moment_abs / divisor, +inf when the divisor vanishes
  double slack = 0.0;       // bound - abs_moment
  double tolerance = 0.0;   // numerical allowance in the verdict
  bool satisfied = false;   // abs_moment <= bound + tolerance
  bool triangle_ok = true;  // |E Z^p| <= E|Z|^p
  double abs_stderr = 0.0;
  double moment_stderr = 0.0;
  std::string abs_method;     // "closed" or "mc"
  std::string moment_method;
};

// E|Z|^p <= |E Z^p| / cos(p pi / 2) for Z in the closed upper or lower
// half-plane and |p| <= 1. PreconditionError on a support violation,
// MomentError when E|Z|^p is infinite. Closed uses closed forms where
// they exist and Monte Carlo for the rest (labelled per quantity).
BoundReport half_plane_bound_check(const DistributionModel& m, double p, Estimator est,
                                   const MCConfig& mc);

// E|Z|^p <= |E Z^p| / cos(p pi) for any Z and |p| < 1/2.
BoundReport general_bound_check(const DistributionModel& m, double p, Estimator est,
                                const MCConfig& mc);

// The comparison without any hypothesis check, for counterexamples.
BoundReport compare_moments(const DistributionModel& m, double p, double divisor,
                            Estimator est, const MCConfig& mc);

// Two-point law with E[Z^p] = 0 and E|Z|^p = 1 for 1/2 < p <= 1:
// atoms e^{+-i pi / (2p)} with weight 1/2.
TwoPoint cancellation_two_point(double p);

struct SllnPoint {
  std::size_t n = 0;
  Complex running;  // prod_{j<=n} z_j^{1/n}
};

struct SllnTrajectory {
  std::vector<SllnPoint> points;
  Complex target;  // exp(E[log Z])
  std::uint64_t seed = 0;
};

// exp(E[log Z]) for the built-in laws supported in the closed upper
// half-plane.
Complex geometric_target(const DistributionModel& m);

// Running geometric mean of n_max draws, recorded at about `records`
// log-spaced values of n (always including n_max).
SllnTrajectory geometric_slln_demo(const DistributionModel& m, std::size_t n_max,
                                   std::uint64_t seed, std::size_t records = 200);

}  // namespace fracmean
