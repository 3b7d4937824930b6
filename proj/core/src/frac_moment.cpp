#include "fracmean/frac_moment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

constexpr int kMaxDerivativeOrder = 20;

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int j = 0; j < k; ++j) r *= z;
  return r;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

struct WeightedAtoms {
  std::vector<Complex> points;
  std::vector<double> weights;
};

WeightedAtoms discrete_atoms(const DistributionModel& m) {
  if (const auto* tp = std::get_if<TwoPoint>(&m)) return {{tp->z1, tp->z2}, {tp->w, 1.0 - tp->w}};
  const auto& e = std::get<Empirical>(m);
  return {e.samples,
          std::vector<double>(e.samples.size(), 1.0 / static_cast<double>(e.samples.size()))};
}

MomentEstimate closed(Complex v, std::string note = {}) {
  MomentEstimate e;
  e.value = v;
  e.method = Method::Closed;
  e.meta.route = "closed";
  e.meta.note = std::move(note);
  return e;
}

void require_alpha_for_negative(const DistributionModel& m, Complex alpha, const char* what) {
  if (is_real_supported(m) && !(alpha.imag() > 0.0)) {
    throw PreconditionError(std::string(what) +
                            ": Im(alpha) > 0 is required for a real-supported law");
  }
}

// Marchaud route for a point law whose shifted atoms reach the real
// axis. Each atom is rotated onto the decaying contour u = i t / z:
// int (1 - e^{iuz}) u^{-1-delta} du = (-iz)^delta int (1 - e^{-t}) t^{-1-delta} dt.
MomentEstimate pos_by_rotation(const WeightedAtoms& at, Complex alpha, int k, Complex delta,
                               const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.truncation_decay = 1.0;
  IntegralResult base = integrate_marchaud(1.0, [](double t) { return Complex{std::exp(-t)}; },
                                           delta, c);
  Complex acc = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < at.points.size(); ++j) {
    if (at.weights[j] == 0.0) continue;
    Complex z = at.points[j] + alpha;
    if (z == Complex{0.0}) continue;
    Complex term = at.weights[j] * ipow(z, k) * principal_pow(-kI * z, delta);
    acc += term;
    scale += std::abs(term);
  }
  Complex pref = principal_pow(kI, delta) * delta / gamma(1.0 - delta);
  MomentEstimate e;
  e.value = pref * acc * base.value;
  e.uncertainty = std::abs(pref) * scale * base.err_estimate;
  e.method = Method::QuadPos;
  e.meta.route = "quad_pos";
  e.meta.evaluations = base.evaluations;
  e.meta.quadrature = cfg;
  e.meta.note = "per-atom contour rotation";
  return e;
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Closed:
      return "Closed";
    case Method::QuadNeg:
      return "QuadNeg";
    case Method::QuadPos:
      return "QuadPos";
    case Method::MonteCarlo:
      return "MonteCarlo";
  }
  return "?";
}

const char* to_string(Route r) noexcept {
  switch (r) {
    case Route::Closed:
      return "closed";
    case Route::Quad:
      return "quad";
    case Route::MonteCarlo:
      return "mc";
    case Route::Auto:
      return "auto";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// fractional moments

MomentEstimate frac_moment_closed(const DistributionModel& m, Complex alpha, Complex lambda) {
  validate(m);
  if (!is_finite(alpha) || !is_finite(lambda)) throw DomainError("non-finite alpha or lambda");
  if (is_discrete(m)) {
    WeightedAtoms at = discrete_atoms(m);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < at.points.size(); ++j) {
      if (at.weights[j] > 0.0) acc += at.weights[j] * principal_pow(at.points[j] + alpha, lambda);
    }
    return closed(acc);
  }
  if (!has_abs_moment(m, lambda.real())) {
    throw MomentError(model_name(m) + ": E|Z|^" + std::to_string(lambda.real()) + " is infinite",
                      lambda.real());
  }
  if (alpha.imag() < 0.0) throw PreconditionError("closed: needs Im(alpha) >= 0");
  if (lambda.real() <= 0.0 && lambda != Complex{0.0}) require_alpha_for_negative(m, alpha, "closed");
  Complex w = gamma_point(m) + alpha;
  if (std::holds_alternative<ScaledT3>(m)) {
    double sigma = std::get<ScaledT3>(m).sigma;
    return closed(principal_pow(w, lambda - 1.0) * (w - kI * lambda * sigma));
  }
  return closed(principal_pow(w, lambda));
}

MomentEstimate frac_moment_neg(const DistributionModel& m, Complex alpha, const FracOrder& order,
                               const QuadratureConfig& cfg) {
  validate(m);
  cfg.validate();
  if (order.region() != FracOrder::Region::NegativeRe)
    throw PreconditionError("quad_neg: needs Re(lambda) < 0");
  require_alpha_for_negative(m, alpha, "quad_neg");
  double decay = transform_decay(m, alpha);
  if (!(decay > 0.0))
    throw PreconditionError("quad_neg: the support of Z + alpha must lie in the open upper half-plane");
  Complex lambda = order.value();
  double s = -lambda.real() - 1.0;
  double im = lambda.imag();
  Integrand g = [&](double t) {
    Complex v = shifted_transform(m, alpha, 0, t);
    if (im != 0.0) v *= std::exp(Complex{0.0, -im * std::log(t)});
    return v;
  };
  QuadratureConfig c = cfg;
  c.truncation_decay = decay;
  IntegralResult r = integrate_singular_decaying(g, s, c);
  Complex pref = principal_pow(kI, lambda) / gamma(-lambda);
  MomentEstimate e;
  e.value = pref * r.value;
  e.uncertainty = std::abs(pref) * r.err_estimate;
  e.method = Method::QuadNeg;
  e.meta.route = "quad_neg";
  e.meta.evaluations = r.evaluations;
  e.meta.quadrature = cfg;
  return e;
}

MomentEstimate frac_moment_pos(const DistributionModel& m, Complex alpha, const FracOrder& order,
                               const QuadratureConfig& cfg) {
  validate(m);
  cfg.validate();
  if (order.region() != FracOrder::Region::PositiveRe)
    throw PreconditionError("quad_pos: needs Re(lambda) > 0");
  Complex lambda = order.value();
  if (is_integer(lambda.real())) {
    throw PreconditionError(
        "quad_pos: Re(lambda) is an integer; compute the moment directly (route closed or mc)");
  }
  if (!has_abs_moment(m, lambda.real())) {
    throw MomentError(model_name(m) + ": E|Z|^" + std::to_string(lambda.real()) + " is infinite",
                      lambda.real());
  }
  if (alpha.imag() < 0.0) throw PreconditionError("quad_pos: needs Im(alpha) >= 0");
  double decay = transform_decay(m, alpha);
  if (decay < 0.0)
    throw PreconditionError("quad_pos: the support of Z + alpha must lie in the closed upper half-plane");
  int k = static_cast<int>(std::floor(lambda.real()));
  Complex delta = lambda - static_cast<double>(k);
  if (is_discrete(m) && decay == 0.0) return pos_by_rotation(discrete_atoms(m), alpha, k, delta, cfg);

  Complex d0 = shifted_transform(m, alpha, k, 0.0);
  Integrand f = [&](double u) { return shifted_transform(m, alpha, k, u); };
  QuadratureConfig c = cfg;
  c.truncation_decay = decay;
  IntegralResult r = integrate_marchaud(d0, f, delta, c);
  Complex pref = principal_pow(kI, delta) * delta / gamma(1.0 - delta);
  MomentEstimate e;
  e.value = pref * r.value;
  e.uncertainty = std::abs(pref) * r.err_estimate;
  e.method = Method::QuadPos;
  e.meta.route = "quad_pos";
  e.meta.evaluations = r.evaluations;
  e.meta.quadrature = cfg;
  return e;
}

MomentEstimate frac_moment_mc(const DistributionModel& m, Complex alpha, Complex lambda,
                              const MCConfig& mc) {
  validate(m);
  if (lambda.real() < 0.0) require_alpha_for_negative(m, alpha, "mc");
  if (!has_abs_moment(m, lambda.real())) {
    throw MomentError(model_name(m) + ": E|Z|^" + std::to_string(lambda.real()) + " is infinite",
                      lambda.real());
  }
  MCResult r = mc_mean(mc, [&](PhiloxStream& rng) {
    return principal_pow(draw(m, rng) + alpha, lambda);
  });
  MomentEstimate e;
  e.value = r.mean;
  e.uncertainty = r.std_error;
  e.method = Method::MonteCarlo;
  e.meta.route = "mc";
  e.meta.seed = mc.seed;
  e.meta.samples = r.samples;
  return e;
}

MomentEstimate fractional_moment(const DistributionModel& m, Complex alpha, Complex lambda,
                                 Route route, const RouteConfig& cfg) {
  auto quad = [&]() {
    FracOrder order(lambda);
    if (order.region() == FracOrder::Region::NegativeRe)
      return frac_moment_neg(m, alpha, order, cfg.quad);
    return frac_moment_pos(m, alpha, order, cfg.quad);
  };
  switch (route) {
    case Route::Closed:
      return frac_moment_closed(m, alpha, lambda);
    case Route::Quad:
      return quad();
    case Route::MonteCarlo:
      return frac_moment_mc(m, alpha, lambda, cfg.mc);
    case Route::Auto:
      break;
  }
  MomentEstimate e;
  try {
    e = frac_moment_closed(m, alpha, lambda);
  } catch (const MomentError&) {
    throw;
  } catch (const PreconditionError&) {
    try {
      e = quad();
    } catch (const MomentError&) {
      throw;
    } catch (const PreconditionError&) {
      e = frac_moment_mc(m, alpha, lambda, cfg.mc);
    }
  }
  e.meta.route = "auto->" + e.meta.route;
  return e;
}

// ---------------------------------------------------------------------------
// power means

void PowerMeanSpec::validate() const {
  if (!(p >= -1.0 && p <= 1.0)) throw ConfigError("power mean: p must lie in [-1, 1]");
  if (n < 1) throw ConfigError("power mean: n must be at least 1");
  if (!is_finite(alpha)) throw ConfigError("power mean: alpha must be finite");
  if (alpha.imag() < 0.0) throw ConfigError("power mean: Im(alpha) must be >= 0");
}

Complex power_mean(std::span<const Complex> values, double p) {
  if (values.empty()) throw DomainError("power_mean: no values");
  double inv_n = 1.0 / static_cast<double>(values.size());
  if (p == 0.0) {
    Complex log_sum = 0.0;
    for (Complex z : values) {
      if (z == Complex{0.0}) return 0.0;
      log_sum += principal_log(z);
    }
    return std::exp(log_sum * inv_n);
  }
  if (p < 0.0) {
    for (Complex z : values)
      if (z == Complex{0.0}) throw DomainError("power_mean: zero input with p < 0");
  }
  Complex acc = 0.0;
  if (p == 1.0) {
    for (Complex z : values) acc += z;
    return acc * inv_n;
  }
  if (p == -1.0) {
    for (Complex z : values) acc += 1.0 / z;
    return 1.0 / (acc * inv_n);
  }
  for (Complex z : values) acc += principal_pow(z, p);
  return principal_pow(acc * inv_n, 1.0 / p);
}

std::pair<Complex, Complex> t3_product_identity(double p, int k) {
  if (!(p < 0.0)) throw DomainError("t3_product_identity: needs p < 0");
  if (k < 0 || k > 12) throw DomainError("t3_product_identity: needs 0 <= k <= 12");
  Complex lhs = std::pow(p, k) * gamma(Complex{k - 1.0 / p}) / gamma(Complex{-1.0 / p});
  double rhs = 1.0;
  for (int j = 0; j < k; ++j) rhs *= j * p - 1.0;
  return {lhs, Complex{rhs}};
}

Complex t3_power_mean(Complex w, double sigma, int n, double p) {
  Complex acc = 0.0;
  Complex ratio = kI * sigma / (static_cast<double>(n) * w);
  Complex rpow = 1.0;
  double prod = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc += binomial(n, k) * rpow * prod;
    rpow *= ratio;
    prod *= k * p - 1.0;
  }
  return w * acc;
}

std::vector<Complex> t3_power_mean_coefficients(Complex w, double sigma, int n) {
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> poly{1.0};  // prod_{j<k} (jp - 1) in powers of p
  Complex ratio = kI * sigma / (static_cast<double>(n) * w);
  Complex rpow = 1.0;
  for (int k = 0; k <= n; ++k) {
    for (std::size_t d = 0; d < poly.size(); ++d) out[d] += w * binomial(n, k) * rpow * poly[d];
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d] -= poly[d];
      next[d + 1] += k * poly[d];
    }
    poly = std::move(next);
    rpow *= ratio;
  }
  while (out.size() > 1 && out.back() == Complex{0.0}) out.pop_back();
  return out;
}

namespace {

// Single-draw transform of W = (Z + alpha)^p along the decaying
// direction: u -> E[exp(i s u W)], s = -1 for p < 0 and +1 for p > 0.
struct InnerTransform {
  std::function<Complex(int, double)> derivative;  // d^j/du^j at u >= 0
  double decay = 0.0;
  std::string note;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

InnerTransform atoms_transform(std::vector<Complex> w, std::vector<double> weights, double s) {
  InnerTransform t;
  double decay = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < w.size(); ++j)
    if (weights[j] > 0.0) decay = std::min(decay, s * w[j].imag());
  t.decay = decay;
  t.derivative = [w = std::move(w), weights = std::move(weights), s](int j, double u) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (weights[i] == 0.0) continue;
      Complex c = s * kI * w[i];
      acc += weights[i] * ipow(c, j) * std::exp(c * u);
    }
    return acc;
  };
  return t;
}

InnerTransform inner_transform(const DistributionModel& m, const PowerMeanSpec& spec,
                               const MCConfig& mc) {
  double p = spec.p;
  double s = p < 0.0 ? -1.0 : 1.0;
  if (is_discrete(m)) {
    WeightedAtoms at = discrete_atoms(m);
    std::vector<Complex> w;
    for (Complex z : at.points) {
      if (p < 0.0 && z + spec.alpha == Complex{0.0})
        throw DomainError("power mean: atom at -alpha with p < 0");
      w.push_back(principal_pow(z + spec.alpha, p));
    }
    InnerTransform t = atoms_transform(std::move(w), std::move(at.weights), s);
    t.note = "exact single-draw transform";
    return t;
  }
  bool closed_form = std::holds_alternative<Poincare>(m) ||
                     (p < 0.0 && (std::holds_alternative<Cauchy>(m) ||
                                  std::holds_alternative<ScaledT3>(m)));
  if (closed_form) {
    Complex w = gamma_point(m) + spec.alpha;
    Complex omega = principal_pow(w, p);
    InnerTransform t;
    t.decay = s * omega.imag();
    t.note = "closed-form single-draw transform";
    if (const auto* d = std::get_if<ScaledT3>(&m)) {
      // E[exp(-iuW)] = (1 - p sigma w^{p-1} u) exp(-iu w^p)
      Complex slope = p * d->sigma * principal_pow(w, p - 1.0);
      t.derivative = [slope, omega](int j, double u) -> Complex {
        if (j != 0) throw PreconditionError("t3 transform: derivatives not available");
        return (1.0 - slope * u) * std::exp(-kI * u * omega);
      };
    } else {
      Complex c = s * kI * omega;
      t.derivative = [c](int j, double u) { return ipow(c, j) * std::exp(c * u); };
    }
    return t;
  }
  // no closed form: sample average of the transform
  std::vector<Complex> draws = sample(m, mc.seed, mc.samples);
  for (Complex& z : draws) z = principal_pow(z + spec.alpha, p);
  std::vector<double> weights(draws.size(), 1.0 / static_cast<double>(draws.size()));
  InnerTransform t = atoms_transform(std::move(draws), std::move(weights), s);
  t.note = "single-draw transform by sample average";
  t.seed = mc.seed;
  t.samples = mc.samples;
  return t;
}

// Taylor coefficients of q(u + h) = psi((u + h)/n)^n up to h^k, from the
// derivatives of psi at u/n; returns q^{(k)}(u).
Complex power_derivative(const InnerTransform& t, int n, int k, double u) {
  double dn = static_cast<double>(n);
  std::vector<Complex> a(static_cast<std::size_t>(k) + 1);
  double fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) fact *= j;
    a[j] = t.derivative(j, u / dn) / (fact * std::pow(dn, j));
  }
  std::vector<Complex> b(a.size(), 0.0);
  b[0] = 1.0;
  for (int r = 0; r < n; ++r) {
    std::vector<Complex> next(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < a.size(); ++j) next[i + j] += b[i] * a[j];
    b = std::move(next);
  }
  return fact * b[k];
}

MomentEstimate power_mean_closed(const DistributionModel& m, const PowerMeanSpec& spec) {
  double p = spec.p;
  int n = spec.n;
  Complex alpha = spec.alpha;
  if (is_discrete(m)) {
    WeightedAtoms at = discrete_atoms(m);
    if (const auto* tp = std::get_if<TwoPoint>(&m)) {
      Complex acc = 0.0;
      std::vector<Complex> vals(n);
      for (int k = 0; k <= n; ++k) {
        double w = binomial(n, k) * std::pow(tp->w, k) * std::pow(1.0 - tp->w, n - k);
        if (w == 0.0) continue;
        for (int j = 0; j < n; ++j) vals[j] = (j < k ? tp->z1 : tp->z2) + alpha;
        acc += w * power_mean(vals, p);
      }
      return closed(acc, "exact enumeration");
    }
    std::size_t N = at.points.size();
    double tuples = std::pow(static_cast<double>(N), n);
    if (tuples > 1e6) throw PreconditionError("closed: too many tuples to enumerate");
    std::vector<std::size_t> idx(n, 0);
    std::vector<Complex> vals(n);
    Complex acc = 0.0;
    double wt = std::pow(1.0 / static_cast<double>(N), n);
    while (true) {
      for (int j = 0; j < n; ++j) vals[j] = at.points[idx[j]] + alpha;
      acc += wt * power_mean(vals, p);
      int j = 0;
      while (j < n && ++idx[j] == N) idx[j++] = 0;
      if (j == n) break;
    }
    return closed(acc, "exact enumeration");
  }
  if (std::holds_alternative<Poincare>(m)) return closed(gamma_point(m) + alpha);
  if (p > 0.0) {
    if (std::holds_alternative<Cauchy>(m))
      throw MomentError("cauchy: the power mean with p > 0 is not integrable", p);
    throw PreconditionError("closed: no closed form for this law with p > 0");
  }
  require_alpha_for_negative(m, alpha, "closed");
  Complex w = gamma_point(m) + alpha;
  if (std::holds_alternative<Cauchy>(m)) {
    if (n < 2) throw MomentError("cauchy: a single draw is not integrable", 1.0);
    return closed(w);
  }
  double sigma = std::get<ScaledT3>(m).sigma;
  if (p == 0.0) {
    // independence: E[prod (X_j + alpha)^{1/n}] = E[(X + alpha)^{1/n}]^n
    double l = 1.0 / n;
    return closed(ipow(principal_pow(w, l - 1.0) * (w - kI * l * sigma), n));
  }
  return closed(t3_power_mean(w, sigma, n, p));
}

MomentEstimate power_mean_frac(const DistributionModel& m, const PowerMeanSpec& spec,
                               const RouteConfig& cfg) {
  double p = spec.p;
  int n = spec.n;
  if (std::holds_alternative<Cauchy>(m) && p > 0.0)
    throw MomentError("cauchy: the power mean with p > 0 is not integrable", p);
  if (p < 0.0) require_alpha_for_negative(m, spec.alpha, "fracderiv");
  if (p == 0.0) {
    // geometric mean: n-th power of the 1/n-th moment
    double l = 1.0 / n;
    MomentEstimate one;
    if (n == 1) {
      if (!has_abs_moment(m, 1.0)) throw MomentError(model_name(m) + ": no mean", 1.0);
      one = closed(shifted_transform(m, spec.alpha, 1, 0.0));
    } else {
      one = frac_moment_pos(m, spec.alpha, FracOrder(l), cfg.quad);
    }
    MomentEstimate e = one;
    e.value = ipow(one.value, n);
    e.uncertainty = n * std::pow(std::abs(one.value), n - 1) * one.uncertainty;
    e.method = Method::QuadPos;
    e.meta.route = "fracderiv";
    e.meta.note = "geometric mean as the n-th power of E[(Z+alpha)^{1/n}]";
    return e;
  }
  InnerTransform t = inner_transform(m, spec, cfg.mc);
  if (!(t.decay > 0.0))
    throw PreconditionError("fracderiv: the single-draw transform does not decay");
  double lam = 1.0 / p;
  MomentEstimate e;
  e.meta.route = "fracderiv";
  e.meta.note = t.note;
  e.meta.seed = t.seed;
  e.meta.samples = t.samples;
  e.meta.quadrature = cfg.quad;
  QuadratureConfig c = cfg.quad;
  c.truncation_decay = t.decay;
  double dn = static_cast<double>(n);
  if (p < 0.0) {
    Integrand g = [&](double u) { return std::pow(t.derivative(0, u / dn), n); };
    IntegralResult r = integrate_singular_decaying(g, -lam - 1.0, c);
    Complex pref = principal_pow(-kI, lam) / gamma(Complex{-lam});
    e.value = pref * r.value;
    e.uncertainty = std::abs(pref) * r.err_estimate;
    e.method = Method::QuadNeg;
    e.meta.evaluations = r.evaluations;
    return e;
  }
  int k = static_cast<int>(std::floor(lam + 1e-12));
  if (k > kMaxDerivativeOrder)
    throw PreconditionError("fracderiv: 1/p exceeds the supported derivative order");
  e.method = Method::QuadPos;
  if (is_integer(lam)) {
    // ordinary m-th derivative at the origin
    e.value = power_derivative(t, n, k, 0.0) / ipow(kI, k);
    e.meta.evaluations = 1;
    return e;
  }
  double delta = lam - k;
  Complex d0 = power_derivative(t, n, k, 0.0);
  Integrand f = [&](double u) { return power_derivative(t, n, k, u); };
  IntegralResult r = integrate_marchaud(d0, f, delta, c);
  Complex pref = principal_pow(-kI, -lam) * (k % 2 ? -1.0 : 1.0) * delta /
                 gamma(Complex{1.0 - delta});
  e.value = pref * r.value;
  e.uncertainty = std::abs(pref) * r.err_estimate;
  e.meta.evaluations = r.evaluations;
  return e;
}

MomentEstimate power_mean_mc(const DistributionModel& m, const PowerMeanSpec& spec,
                             const MCConfig& mc) {
  if (spec.p < 0.0) require_alpha_for_negative(m, spec.alpha, "mc");
  if (std::holds_alternative<Cauchy>(m)) {
    if (spec.p > 0.0) throw MomentError("cauchy: the power mean with p > 0 is not integrable", spec.p);
    if (spec.n < 2) throw MomentError("cauchy: a single draw is not integrable", 1.0);
  }
  int n = spec.n;
  MCResult r = mc_mean(mc, [&](PhiloxStream& rng) {
    thread_local std::vector<Complex> vals;
    vals.resize(n);
    for (int j = 0; j < n; ++j) vals[j] = draw(m, rng) + spec.alpha;
    return power_mean(vals, spec.p);
  });
  MomentEstimate e;
  e.value = r.mean;
  e.uncertainty = r.std_error;
  e.method = Method::MonteCarlo;
  e.meta.route = "mc";
  e.meta.seed = mc.seed;
  e.meta.samples = r.samples;
  return e;
}

}  // namespace

MomentEstimate power_mean_expectation(const DistributionModel& m, const PowerMeanSpec& spec,
                                      Route route, const RouteConfig& cfg) {
  validate(m);
  spec.validate();
  switch (route) {
    case Route::Closed:
      return power_mean_closed(m, spec);
    case Route::Quad:
      return power_mean_frac(m, spec, cfg);
    case Route::MonteCarlo:
      return power_mean_mc(m, spec, cfg.mc);
    case Route::Auto:
      break;
  }
  MomentEstimate e;
  try {
    e = power_mean_closed(m, spec);
  } catch (const MomentError&) {
    throw;
  } catch (const PreconditionError&) {
    try {
      e = power_mean_frac(m, spec, cfg);
    } catch (const MomentError&) {
      throw;
    } catch (const PreconditionError&) {
      e = power_mean_mc(m, spec, cfg.mc);
    }
  }
  e.meta.route = "auto->" + e.meta.route;
  return e;
}

ScanResult continuity_scan(const DistributionModel& m, Complex alpha, int n,
                           const std::vector<double>& p_grid, Route route,
                           const RouteConfig& cfg) {
  ScanResult out;
  for (double p : p_grid) {
    ScanRow row;
    row.p = p;
    try {
      row.estimate = power_mean_expectation(m, PowerMeanSpec{p, n, alpha}, route, cfg);
    } catch (const Error& ex) {
      row.error = ex.what();
    }
    out.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const auto& a = out.rows[i - 1].estimate;
    const auto& b = out.rows[i].estimate;
    if (!a || !b) continue;
    double jump = std::abs(b->value - a->value);
    double unc = std::hypot(a->uncertainty, b->uncertainty);
    double ratio = jump == 0.0 ? 0.0 : (unc > 0.0 ? jump / unc : std::numeric_limits<double>::infinity());
    if (jump > out.max_jump) {
      out.max_jump = jump;
      out.jump_uncertainty = unc;
    }
    out.max_jump_ratio = std::max(out.max_jump_ratio, ratio);
  }
  return out;
}

}  // namespace fracmean
