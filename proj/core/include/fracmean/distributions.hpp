#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fracmean/complex.hpp"
#include "fracmean/rng.hpp"

namespace fracmean {

// Real Cauchy law, density sigma / (pi ((x - mu)^2 + sigma^2)).
struct Cauchy {
  double mu = 0.0;
  double sigma = 1.0;
};

// Location-scale Student t with 3 degrees of freedom in the
// parametrization 2 sigma^3 / (pi |x - gamma|^4), gamma = mu + sigma i.
struct ScaledT3 {
  double mu = 0.0;
  double sigma = 1.0;
};

// Poincare law on the upper half-plane, D = sqrt(ac - b^2) > 0.
struct Poincare {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;

  double D() const;
};

// w at z1, 1 - w at z2.
struct TwoPoint {
  Complex z1;
  Complex z2;
  double w = 0.5;
};

// Uniform law on a finite list of points.
struct Empirical {
  std::vector<Complex> samples;
};

using DistributionModel = std::variant<Cauchy, ScaledT3, Poincare, TwoPoint, Empirical>;

enum class Sign { PlusI, MinusI };

// Throws ConfigError when a parameter constraint fails.
void validate(const DistributionModel& m);

std::string model_name(const DistributionModel& m);

bool is_discrete(const DistributionModel& m);

// Every point of the support is real.
bool is_real_supported(const DistributionModel& m);

// Every point of the support has Im >= 0 (resp. Im <= 0).
bool is_upper_supported(const DistributionModel& m);
bool is_lower_supported(const DistributionModel& m);

// Location-scale point: mu + sigma i, or -b/a + (D/a) i for Poincare.
// PreconditionError for discrete laws.
Complex gamma_point(const DistributionModel& m);

// E|Z|^r < infinity (r > 0; always true for r <= 0 on the real scale
// used by the routes, which check negative orders separately).
bool has_abs_moment(const DistributionModel& m, double r);

// Density at a support point. DomainError off the support or for
// discrete laws.
double density(const DistributionModel& m, Complex point);

// E[exp(itZ)], t >= 0.
Complex char_fn(const DistributionModel& m, double t);

// k-th derivative of t -> E[exp(+-itZ)] at t >= 0. MomentError when
// E|Z|^k is infinite.
Complex char_fn_derivative(const DistributionModel& m, int k, double t, Sign sign);

// E[(Z + alpha)^k exp(iu(Z + alpha))] for u >= 0 and integer k >= 0,
// from the derivatives above (binomial expansion) or exact sums.
Complex shifted_transform(const DistributionModel& m, Complex alpha, int k, double u);

// Exponential decay rate of u -> E[exp(iu(Z + alpha))]: the infimum of
// Im(Z + alpha) over the support for point laws, sigma + Im(alpha) for
// the real families, D/a + Im(alpha) for Poincare.
double transform_decay(const DistributionModel& m, Complex alpha);

// One draw from the law.
Complex draw(const DistributionModel& m, PhiloxStream& rng);

// n draws; blocks of 4096 use streams (seed, block), so the output does
// not depend on the thread count.
std::vector<Complex> sample(const DistributionModel& m, std::uint64_t seed, std::size_t n);

inline constexpr std::size_t kSampleBlock = 4096;

}  // namespace fracmean
