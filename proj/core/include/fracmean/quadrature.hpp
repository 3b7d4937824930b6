#pragma once

#include <cstddef>
#include <functional>

#include "fracmean/complex.hpp"

namespace fracmean {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_level = 10;             // tanh-sinh refinement cap, in [3, 14]
  double truncation_decay = 1.0;  // exponential decay rate of the tail, > 0

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

struct IntegralResult {
  Complex value;
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  double abs_integral = 0.0;  // estimate of the integral of |h|, for the rounding floor
};

using Integrand = std::function<Complex(double)>;

// Integral over (0, a] of h with an integrable singularity at 0, by the
// tanh-sinh rule. Refines h -> h/2 until two successive levels agree to
// tolerance or max_level is reached; never throws on non-convergence,
// the caller inspects `converged`. `smallest_node`, when non-null,
// receives the node closest to 0 that was used.
IntegralResult tanh_sinh_left(const Integrand& h, double a,
                              const QuadratureConfig& cfg,
                              double* smallest_node = nullptr);

// Globally adaptive Gauss-Kronrod 7/15 on [a, b], starting from
// `initial_panels` equal panels. The absolute target is `tol`.
IntegralResult gauss_kronrod(const Integrand& h, double a, double b,
                             double tol, int max_level,
                             std::size_t initial_panels = 1);

// Integral over (0, inf) of t^s g(t) for s > -1 and g bounded with
// exponential decay at rate ~cfg.truncation_decay. Splits at t = 1:
// tanh-sinh absorbs the algebraic singularity on (0, 1], adaptive
// Gauss-Kronrod handles [1, T]; T is found by probing the envelope of
// the integrand past the point where it is below tolerance.
// Throws ConvergenceError if the result misses tolerance at max_level.
// With heavy cancellation the tolerance is floored at 64 eps times the
// integral of |t^s g|; err_estimate still reports the real estimate.
IntegralResult integrate_singular_decaying(const Integrand& g, double s,
                                           const QuadratureConfig& cfg);

// Marchaud-type integral over (0, inf) of (d0 - f(u)) / u^{1+delta},
// 0 < Re(delta) < 1, with |d0 - f(u)| <= L u near 0 and f decaying on
// the tail. The constant part of the tail is integrated exactly
// (d0 / delta on [1, inf)). Throws PreconditionError when samples near
// the origin show |d0 - f(u)|/u diverging, ConvergenceError as above.
IntegralResult integrate_marchaud(Complex d0, const Integrand& f,
                                  Complex delta, const QuadratureConfig& cfg);

}  // namespace fracmean
