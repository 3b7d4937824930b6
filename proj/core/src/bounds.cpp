#include "fracmean/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

constexpr double kPi = std::numbers::pi;

struct Quantity {
  double value = 0.0;
  double stderr_ = 0.0;
  bool closed = false;
};

struct Moments {
  Complex moment;  // E[Z^p]
  double moment_se = 0.0;
  bool moment_closed = false;
  Quantity abs;    // E|Z|^p
};

void check_abs_moment(const DistributionModel& m, double p) {
  if (p > 0.0 && !has_abs_moment(m, p))
    throw MomentError(model_name(m) + ": E|Z|^p is infinite", p);
  // real laws with a positive density at 0 have E|X|^p = inf for p <= -1
  if (p <= -1.0 && is_real_supported(m) && !is_discrete(m))
    throw MomentError(model_name(m) + ": E|X|^p is infinite for p <= -1", p);
}

Moments moments(const DistributionModel& m, double p, Estimator est, const MCConfig& mc) {
  Moments out;
  if (est == Estimator::Closed) {
    if (const auto* tp = std::get_if<TwoPoint>(&m)) {
      out.moment = tp->w * principal_pow(tp->z1, p) + (1.0 - tp->w) * principal_pow(tp->z2, p);
      out.abs.value = tp->w * std::abs(principal_pow(tp->z1, p)) +
                      (1.0 - tp->w) * std::abs(principal_pow(tp->z2, p));
      out.moment_closed = out.abs.closed = true;
      return out;
    }
    if (const auto* e = std::get_if<Empirical>(&m)) {
      double w = 1.0 / static_cast<double>(e->samples.size());
      for (Complex z : e->samples) {
        Complex zp = principal_pow(z, p);
        out.moment += w * zp;
        out.abs.value += w * std::abs(zp);
      }
      out.moment_closed = out.abs.closed = true;
      return out;
    }
    Complex g = gamma_point(m);
    if (const auto* t = std::get_if<ScaledT3>(&m)) {
      out.moment = principal_pow(g, p - 1.0) * (g - kI * p * t->sigma);
    } else {
      out.moment = principal_pow(g, p);
    }
    out.moment_closed = true;
    if (const auto* c = std::get_if<Cauchy>(&m); c && c->mu == 0.0 && std::abs(p) < 1.0) {
      out.abs.value = std::pow(c->sigma, p) / std::cos(p * kPi / 2.0);
      out.abs.closed = true;
      return out;
    }
  }
  MCResult abs = mc_mean(mc, [&](PhiloxStream& rng) {
    return Complex{std::abs(principal_pow(draw(m, rng), p))};
  });
  out.abs.value = abs.mean.real();
  out.abs.stderr_ = abs.std_error;
  if (!out.moment_closed) {
    MCResult mom = mc_mean(mc, [&](PhiloxStream& rng) { return principal_pow(draw(m, rng), p); });
    out.moment = mom.mean;
    out.moment_se = mom.std_error;
  }
  return out;
}

}  // namespace

const char* to_string(Estimator e) noexcept {
  return e == Estimator::Closed ? "closed" : "mc";
}

BoundReport compare_moments(const DistributionModel& m, double p, double divisor,
                            Estimator est, const MCConfig& mc) {
  validate(m);
  Moments mo = moments(m, p, est, mc);
  BoundReport r;
  r.p = p;
  r.divisor = divisor;
  r.abs_moment = mo.abs.value;
  r.moment_abs = std::abs(mo.moment);
  r.abs_stderr = mo.abs.stderr_;
  r.moment_stderr = mo.moment_se;
  r.abs_method = mo.abs.closed ? "closed" : "mc";
  r.moment_method = mo.moment_closed ? "closed" : "mc";
  double rounding = 1e-12 * std::max(1.0, r.abs_moment);
  r.triangle_ok = r.moment_abs <= r.abs_moment + rounding + 4.0 * std::hypot(r.abs_stderr, r.moment_stderr);
  if (std::abs(divisor) < 1e-15) {
    // |p| = 1: the bound is vacuous
    r.bound = std::numeric_limits<double>::infinity();
    r.slack = std::numeric_limits<double>::infinity();
    r.satisfied = true;
    r.tolerance = 0.0;
    return r;
  }
  r.bound = r.moment_abs / divisor;
  r.slack = r.bound - r.abs_moment;
  r.tolerance = rounding + 4.0 * std::hypot(r.abs_stderr, r.moment_stderr / divisor);
  r.satisfied = r.abs_moment <= r.bound + r.tolerance;
  return r;
}

BoundReport half_plane_bound_check(const DistributionModel& m, double p, Estimator est,
                                   const MCConfig& mc) {
  validate(m);
  if (!(std::abs(p) <= 1.0)) throw PreconditionError("half-plane bound: needs |p| <= 1");
  if (!is_upper_supported(m) && !is_lower_supported(m))
    throw PreconditionError("half-plane bound: support is not in a closed half-plane");
  check_abs_moment(m, p);
  double divisor = std::abs(p) == 1.0 ? 0.0 : std::cos(p * kPi / 2.0);
  return compare_moments(m, p, divisor, est, mc);
}

BoundReport general_bound_check(const DistributionModel& m, double p, Estimator est,
                                const MCConfig& mc) {
  validate(m);
  if (!(std::abs(p) < 0.5)) throw PreconditionError("general bound: needs |p| < 1/2");
  check_abs_moment(m, p);
  return compare_moments(m, p, std::cos(p * kPi), est, mc);
}

TwoPoint cancellation_two_point(double p) {
  if (!(p > 0.5 && p <= 1.0)) throw DomainError("cancellation_two_point: needs 1/2 < p <= 1");
  double th = kPi / (2.0 * p);
  return TwoPoint{std::polar(1.0, th), std::polar(1.0, -th), 0.5};
}

Complex geometric_target(const DistributionModel& m) {
  if (!is_upper_supported(m))
    throw PreconditionError("slln: the law must be supported in the closed upper half-plane");
  if (std::holds_alternative<Cauchy>(m) || std::holds_alternative<Poincare>(m)) return gamma_point(m);
  if (const auto* t = std::get_if<ScaledT3>(&m)) {
    // d/dl [g^{l-1}(g - i l sigma)] at l = 0 gives log g - i sigma / g
    Complex g = gamma_point(m);
    return g * std::exp(-kI * t->sigma / g);
  }
  std::vector<Complex> pts;
  std::vector<double> ws;
  if (const auto* tp = std::get_if<TwoPoint>(&m)) {
    pts = {tp->z1, tp->z2};
    ws = {tp->w, 1.0 - tp->w};
  } else {
    const auto& e = std::get<Empirical>(m);
    pts = e.samples;
    ws.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
  }
  Complex acc = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (ws[j] == 0.0) continue;
    if (pts[j] == Complex{0.0}) throw PreconditionError("slln: atom at 0, E[log Z] = -inf");
    acc += ws[j] * principal_log(pts[j]);
  }
  return std::exp(acc);
}

SllnTrajectory geometric_slln_demo(const DistributionModel& m, std::size_t n_max,
                                   std::uint64_t seed, std::size_t records) {
  validate(m);
  if (n_max < 1) throw ConfigError("slln: n_max must be at least 1");
  SllnTrajectory out;
  out.target = geometric_target(m);
  out.seed = seed;
  std::size_t next_record = 1;
  double ratio = std::pow(static_cast<double>(n_max), 1.0 / std::max<std::size_t>(records, 1));
  Complex log_sum = 0.0;
  bool zero = false;
  std::size_t n = 0;
  for (std::size_t b = 0; n < n_max; ++b) {
    PhiloxStream rng(seed, b);
    for (std::size_t i = 0; i < kSampleBlock && n < n_max; ++i) {
      Complex z = draw(m, rng);
      ++n;
      if (z == Complex{0.0}) {
        zero = true;
      } else {
        log_sum += principal_log(z);
      }
      if (n == next_record || n == n_max) {
        Complex gm = zero ? Complex{0.0} : std::exp(log_sum / static_cast<double>(n));
        out.points.push_back({n, gm});
        next_record = std::max(n + 1, static_cast<std::size_t>(std::ceil(n * ratio)));
      }
    }
  }
  return out;
}

}  // namespace fracmean
