#include "fracmean/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracmean/error.hpp"
#include "fracmean/parallel.hpp"

namespace fracmean {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

struct Atoms {
  std::vector<Complex> points;
  std::vector<double> weights;
};

Atoms atoms_of(const DistributionModel& m) {
  if (const auto* tp = std::get_if<TwoPoint>(&m)) {
    return {{tp->z1, tp->z2}, {tp->w, 1.0 - tp->w}};
  }
  const auto& e = std::get<Empirical>(m);
  double w = 1.0 / static_cast<double>(e.samples.size());
  return {e.samples, std::vector<double>(e.samples.size(), w)};
}

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int j = 0; j < k; ++j) r *= z;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void check_moment(const DistributionModel& m, int k) {
  if (k > 0 && !has_abs_moment(m, k)) {
    throw MomentError(model_name(m) + ": E|Z|^" + std::to_string(k) + " is infinite", k);
  }
}

// Inverse Gaussian by Michael, Schucany and Haas.
double inverse_gaussian(double mean, double shape, PhiloxStream& rng) {
  double nu = rng.normal();
  double y = nu * nu;
  double my = mean * y;
  double x = mean + mean * my / (2.0 * shape) -
             (mean / (2.0 * shape)) * std::sqrt(4.0 * mean * shape * y + my * my);
  if (rng.uniform() <= mean / (mean + x)) return x;
  return mean * mean / x;
}

}  // namespace

double Poincare::D() const { return std::sqrt(a * c - b * b); }

void validate(const DistributionModel& m) {
  std::visit(
      Overloaded{
          [](const Cauchy& d) {
            if (!std::isfinite(d.mu) || !(d.sigma > 0.0) || !std::isfinite(d.sigma))
              throw ConfigError("cauchy: need finite mu and sigma > 0");
          },
          [](const ScaledT3& d) {
            if (!std::isfinite(d.mu) || !(d.sigma > 0.0) || !std::isfinite(d.sigma))
              throw ConfigError("t3: need finite mu and sigma > 0");
          },
          [](const Poincare& d) {
            if (!(d.a > 0.0) || !(d.c > 0.0) || !std::isfinite(d.b) ||
                !std::isfinite(d.a) || !std::isfinite(d.c) || !(d.a * d.c - d.b * d.b > 0.0))
              throw ConfigError("poincare: need a > 0, c > 0 and ac - b^2 > 0");
          },
          [](const TwoPoint& d) {
            if (!is_finite(d.z1) || !is_finite(d.z2) || !(d.w >= 0.0 && d.w <= 1.0))
              throw ConfigError("twopoint: need finite atoms and w in [0, 1]");
          },
          [](const Empirical& d) {
            if (d.samples.empty()) throw ConfigError("empirical: no samples");
            for (Complex z : d.samples)
              if (!is_finite(z)) throw ConfigError("empirical: non-finite sample");
          },
      },
      m);
}

std::string model_name(const DistributionModel& m) {
  static const char* names[] = {"cauchy", "t3", "poincare", "twopoint", "empirical"};
  return names[m.index()];
}

bool is_discrete(const DistributionModel& m) {
  return std::holds_alternative<TwoPoint>(m) || std::holds_alternative<Empirical>(m);
}

bool is_real_supported(const DistributionModel& m) {
  if (std::holds_alternative<Cauchy>(m) || std::holds_alternative<ScaledT3>(m)) return true;
  if (std::holds_alternative<Poincare>(m)) return false;
  Atoms at = atoms_of(m);
  for (std::size_t j = 0; j < at.points.size(); ++j)
    if (at.weights[j] > 0.0 && at.points[j].imag() != 0.0) return false;
  return true;
}

bool is_upper_supported(const DistributionModel& m) {
  if (!is_discrete(m)) return true;
  Atoms at = atoms_of(m);
  for (std::size_t j = 0; j < at.points.size(); ++j)
    if (at.weights[j] > 0.0 && at.points[j].imag() < 0.0) return false;
  return true;
}

bool is_lower_supported(const DistributionModel& m) {
  if (is_real_supported(m)) return true;
  if (!is_discrete(m)) return false;
  Atoms at = atoms_of(m);
  for (std::size_t j = 0; j < at.points.size(); ++j)
    if (at.weights[j] > 0.0 && at.points[j].imag() > 0.0) return false;
  return true;
}

Complex gamma_point(const DistributionModel& m) {
  if (const auto* d = std::get_if<Cauchy>(&m)) return {d->mu, d->sigma};
  if (const auto* d = std::get_if<ScaledT3>(&m)) return {d->mu, d->sigma};
  if (const auto* d = std::get_if<Poincare>(&m)) return {-d->b / d->a, d->D() / d->a};
  throw PreconditionError(model_name(m) + ": no location-scale point");
}

bool has_abs_moment(const DistributionModel& m, double r) {
  if (!(r > 0.0)) return true;
  if (std::holds_alternative<Cauchy>(m)) return r < 1.0;
  if (std::holds_alternative<ScaledT3>(m)) return r < 3.0;
  return true;
}

double density(const DistributionModel& m, Complex point) {
  double x = point.real();
  double y = point.imag();
  return std::visit(
      Overloaded{
          [&](const Cauchy& d) {
            if (y != 0.0) throw DomainError("cauchy density: point off the real axis");
            double u = x - d.mu;
            return d.sigma / (kPi * (u * u + d.sigma * d.sigma));
          },
          [&](const ScaledT3& d) {
            if (y != 0.0) throw DomainError("t3 density: point off the real axis");
            double u = x - d.mu;
            double q = u * u + d.sigma * d.sigma;
            return 2.0 * d.sigma * d.sigma * d.sigma / (kPi * q * q);
          },
          [&](const Poincare& d) {
            if (!(y > 0.0)) throw DomainError("poincare density: point not in the upper half-plane");
            double D = d.D();
            double e = 2.0 * D - (d.a * (x * x + y * y) + 2.0 * d.b * x + d.c) / y;
            return D * std::exp(e) / (kPi * y * y);
          },
          [&](const auto&) -> double {
            throw DomainError(model_name(m) + ": discrete law has no density");
          },
      },
      m);
}

Complex char_fn(const DistributionModel& m, double t) {
  return char_fn_derivative(m, 0, t, Sign::PlusI);
}

Complex char_fn_derivative(const DistributionModel& m, int k, double t, Sign sign) {
  if (k < 0) throw DomainError("char_fn_derivative: negative order");
  if (!(t >= 0.0)) throw DomainError("char_fn_derivative: needs t >= 0");
  check_moment(m, k);
  if (t == 0.0 && k == 0) return 1.0;
  double s = sign == Sign::PlusI ? 1.0 : -1.0;
  return std::visit(
      Overloaded{
          [&](const Cauchy& d) -> Complex {
            // e^{i gamma t}, or e^{-i conj(gamma) t} for the minus sign
            Complex c{-d.sigma, s * d.mu};
            return std::exp(c * t);
          },
          [&](const ScaledT3& d) -> Complex {
            Complex c{-d.sigma, s * d.mu};
            Complex ck = ipow(c, k);
            Complex ck1 = k > 0 ? ipow(c, k - 1) : Complex{0.0};
            return std::exp(c * t) * (ck * (1.0 + d.sigma * t) + double(k) * d.sigma * ck1);
          },
          [&](const Poincare& d) -> Complex {
            Complex beta = gamma_point(m);
            if (sign == Sign::PlusI) {
              Complex c = kI * beta;
              return ipow(c, k) * std::exp(c * t);
            }
            // E[exp(-itZ)] = exp(-it beta) for t < 2a, exp(i(b/a)t + 4D - (D/a)t) beyond
            if (t < 2.0 * d.a) {
              Complex c = -kI * beta;
              return ipow(c, k) * std::exp(c * t);
            }
            if (t == 2.0 * d.a && k > 0)
              throw DomainError("poincare: E[exp(-itZ)] is not differentiable at t = 2a");
            double D = d.D();
            Complex c{-D / d.a, d.b / d.a};
            return ipow(c, k) * std::exp(4.0 * D + c * t);
          },
          [&](const auto&) -> Complex {
            Atoms at = atoms_of(m);
            Complex acc = 0.0;
            for (std::size_t j = 0; j < at.points.size(); ++j) {
              if (at.weights[j] == 0.0) continue;
              Complex c = s * kI * at.points[j];
              acc += at.weights[j] * ipow(c, k) * std::exp(c * t);
            }
            return acc;
          },
      },
      m);
}

Complex shifted_transform(const DistributionModel& m, Complex alpha, int k, double u) {
  if (k < 0) throw DomainError("shifted_transform: negative order");
  if (!(u >= 0.0)) throw DomainError("shifted_transform: needs u >= 0");
  if (is_discrete(m)) {
    Atoms at = atoms_of(m);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < at.points.size(); ++j) {
      if (at.weights[j] == 0.0) continue;
      Complex z = at.points[j] + alpha;
      acc += at.weights[j] * ipow(z, k) * std::exp(kI * u * z);
    }
    return acc;
  }
  check_moment(m, k);
  // E[Z^j e^{iuZ}] = (-i)^j phi^{(j)}(u)
  Complex acc = 0.0;
  Complex minus_i_pow = 1.0;
  for (int j = 0; j <= k; ++j) {
    acc += binomial(k, j) * ipow(alpha, k - j) * minus_i_pow *
           char_fn_derivative(m, j, u, Sign::PlusI);
    minus_i_pow *= -kI;
  }
  return acc * std::exp(kI * u * alpha);
}

double transform_decay(const DistributionModel& m, Complex alpha) {
  if (const auto* d = std::get_if<Cauchy>(&m)) return d->sigma + alpha.imag();
  if (const auto* d = std::get_if<ScaledT3>(&m)) return d->sigma + alpha.imag();
  if (const auto* d = std::get_if<Poincare>(&m)) return d->D() / d->a + alpha.imag();
  Atoms at = atoms_of(m);
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < at.points.size(); ++j)
    if (at.weights[j] > 0.0) lo = std::min(lo, at.points[j].imag() + alpha.imag());
  return lo;
}

Complex draw(const DistributionModel& m, PhiloxStream& rng) {
  return std::visit(
      Overloaded{
          [&](const Cauchy& d) -> Complex {
            return d.mu + d.sigma * std::tan(kPi * (rng.uniform() - 0.5));
          },
          [&](const ScaledT3& d) -> Complex {
            // mu + sigma T / sqrt(3), T ~ t_3: the sqrt(3) cancels the chi^2_3 / 3 scaling
            double g1 = rng.normal(), g2 = rng.normal(), g3 = rng.normal();
            double chi2 = g1 * g1 + g2 * g2 + g3 * g3;
            return d.mu + d.sigma * rng.normal() / std::sqrt(chi2);
          },
          [&](const Poincare& d) -> Complex {
            double D = d.D();
            double y = inverse_gaussian(D / d.a, 2.0 * D * D / d.a, rng);
            double x = -d.b / d.a + std::sqrt(y / (2.0 * d.a)) * rng.normal();
            return {x, y};
          },
          [&](const TwoPoint& d) -> Complex {
            return rng.uniform() < d.w ? d.z1 : d.z2;
          },
          [&](const Empirical& d) -> Complex {
            auto n = d.samples.size();
            auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
            return d.samples[std::min(idx, n - 1)];
          },
      },
      m);
}

std::vector<Complex> sample(const DistributionModel& m, std::uint64_t seed, std::size_t n) {
  validate(m);
  std::vector<Complex> out(n);
  std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  parallel_for(blocks, [&](std::size_t b) {
    PhiloxStream rng(seed, b);
    std::size_t end = std::min(n, (b + 1) * kSampleBlock);
    for (std::size_t i = b * kSampleBlock; i < end; ++i) out[i] = draw(m, rng);
  });
  return out;
}

}  // namespace fracmean
