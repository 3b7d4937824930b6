#pragma once

#include <complex>
#include <numbers>

namespace fracmean {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Principal logarithm log|z| + i*theta with theta in (-pi, pi]. The whole
// negative real axis (including a signed -0.0 imaginary part) maps to
// theta = +pi. Throws DomainError for z = 0.
Complex principal_log(Complex z);

// z^lambda := exp(lambda * log z) on the principal branch, and exactly 0
// for z = 0 whatever lambda is (so 0^0 = 0).
Complex principal_pow(Complex z, Complex lambda);

// Complex Gamma function. Lanczos (g = 607/128, 15 terms) for
// Re(z) >= 1/2, reflection otherwise. Throws DomainError at the poles
// 0, -1, -2, ...
// With a double argument, call it qualified: glibc's ::gamma is log|Gamma|.
Complex gamma(Complex z);

// log Gamma on Re(z) >= 1/2 (principal value of the Lanczos log form).
Complex log_gamma_right(Complex z);

// C(lambda) = Gamma(-Re l) exp(pi |Im l| / 2) / |Gamma(-l)|, the constant
// in |z^l| <= C(l) |Im z|^{Re l} for z off the real axis. Re(l) < 0.
double power_bound_constant(Complex lambda);

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z);

bool is_finite(Complex z) noexcept;

// Order of a fractional operator; the sign of Re(lambda) selects the
// Riemann-Liouville (negative) or Marchaud (positive) route.
class FracOrder {
 public:
  enum class Region { NegativeRe, Zero, PositiveRe };

  explicit FracOrder(Complex lambda);

  Complex value() const noexcept { return lambda_; }
  Region region() const noexcept { return region_; }

 private:
  Complex lambda_;
  Region region_;
};

const char* to_string(FracOrder::Region r) noexcept;

}  // namespace fracmean
