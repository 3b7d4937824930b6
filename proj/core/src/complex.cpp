#include "fracmean/complex.hpp"

#include <array>
#include <cmath>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

bool is_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi x) and cos(pi x) with exact argument reduction.
void sincos_pi(double x, double& s, double& c) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  // Exact zeros at the integers and half-integers.
  if (r == 0.0) {
    s = 0.0;
    c = 1.0;
    return;
  }
  if (r == 1.0 || r == -1.0) {
    s = 0.0;
    c = -1.0;
    return;
  }
  if (r == 0.5) {
    s = 1.0;
    c = 0.0;
    return;
  }
  if (r == -0.5) {
    s = -1.0;
    c = 0.0;
    return;
  }
  s = std::sin(kPi * r);
  c = std::cos(kPi * r);
}

Complex sin_pi(Complex z) {
  double s, c;
  sincos_pi(z.real(), s, c);
  double y = kPi * z.imag();
  return {s * std::cosh(y), c * std::sinh(y)};
}

Complex lanczos_sum(Complex zm1) {
  Complex a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    a += kLanczos[k] / (zm1 + static_cast<double>(k));
  }
  return a;
}

}  // namespace

bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex principal_log(Complex z) {
  if (z == Complex{0.0, 0.0}) {
    throw DomainError("principal_log: log of zero");
  }
  double theta = std::atan2(z.imag(), z.real());
  if (z.imag() == 0.0 && z.real() < 0.0) theta = kPi;  // -0.0 imaginary part
  return {std::log(std::abs(z)), theta};
}

Complex principal_pow(Complex z, Complex lambda) {
  if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
  return std::exp(lambda * principal_log(z));
}

Complex expm1(Complex z) {
  double x = z.real();
  double y = z.imag();
  if (std::abs(x) > 0.5 || std::abs(y) > 0.5) return std::exp(z) - 1.0;
  double em1 = std::expm1(x);
  double sh = std::sin(0.5 * y);
  double cosm1 = -2.0 * sh * sh;
  return {em1 * std::cos(y) + cosm1, std::exp(x) * std::sin(y)};
}

Complex log_gamma_right(Complex z) {
  Complex zm1 = z - 1.0;
  Complex t = zm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(zm1));
}

Complex gamma(Complex z) {
  if (is_pole(z)) {
    throw DomainError("gamma: pole at non-positive integer " +
                      std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (sin_pi(z) * gamma(1.0 - z));
  }
  Complex zm1 = z - 1.0;
  Complex t = zm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((zm1 + 0.5) * std::log(t) - t) *
         lanczos_sum(zm1);
}

double power_bound_constant(Complex lambda) {
  if (!(lambda.real() < 0.0)) {
    throw DomainError("power_bound_constant: requires Re(lambda) < 0");
  }
  double num = gamma(Complex{-lambda.real(), 0.0}).real() *
               std::exp(kPi * std::abs(lambda.imag()) / 2.0);
  return num / std::abs(gamma(-lambda));
}

FracOrder::FracOrder(Complex lambda) : lambda_(lambda) {
  if (!is_finite(lambda)) throw DomainError("FracOrder: non-finite order");
  if (lambda.real() < 0.0) {
    region_ = Region::NegativeRe;
  } else if (lambda.real() > 0.0) {
    region_ = Region::PositiveRe;
  } else {
    region_ = Region::Zero;
  }
}

const char* to_string(FracOrder::Region r) noexcept {
  switch (r) {
    case FracOrder::Region::NegativeRe:
      return "NegativeRe";
    case FracOrder::Region::Zero:
      return "Zero";
    case FracOrder::Region::PositiveRe:
      return "PositiveRe";
  }
  return "?";
}

}  // namespace fracmean
