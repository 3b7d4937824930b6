#include "fracmean/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;
constexpr double kTinyNode = 1e-300;
constexpr double kMaxAbscissa = 6.5;

double target(const QuadratureConfig& cfg, Complex value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// Kronrod 15 / Gauss 7 (QUADPACK qk15, Fullerton 1981).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double err;
  double abs_value;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel kronrod15(const Integrand& h, double a, double b, std::size_t& evals) {
  double centre = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  Complex fc = h(centre);
  Complex resk = fc * kWgk[7];
  Complex resg = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    Complex f1 = h(centre - dx);
    Complex f2 = h(centre + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  resk *= half;
  resg *= half;
  return {a, b, resk, std::abs(resk - resg), resabs * half};
}

// One tanh-sinh node on (0, a]; returns false when the node underflows.
bool ts_node(double x, double a, double& t, double& w) {
  double u = 0.5 * kPi * std::sinh(x);
  double e = std::exp(-2.0 * std::abs(u));
  double denom = 1.0 + e;
  t = (u >= 0.0) ? a / denom : a * e / denom;
  w = a * kPi * std::cosh(x) * e / (denom * denom);
  return t > kTinyNode && w > 0.0 && t < a;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw ConfigError("QuadratureConfig: rel_tol and abs_tol must be > 0");
  }
  if (max_level < 3 || max_level > 14) {
    throw ConfigError("QuadratureConfig: max_level must be in [3, 14]");
  }
  if (!(truncation_decay > 0.0)) {
    throw ConfigError("QuadratureConfig: truncation_decay must be > 0");
  }
}

IntegralResult tanh_sinh_left(const Integrand& h, double a,
                              const QuadratureConfig& cfg,
                              double* smallest_node) {
  IntegralResult out;
  double tmin = a;
  double abs_sum = 0.0;
  auto accumulate = [&](double x) {
    double t, w;
    if (!ts_node(x, a, t, w)) return Complex{};
    tmin = std::min(tmin, t);
    ++out.evaluations;
    Complex v = w * h(t);
    abs_sum += std::abs(v);
    return v;
  };

  // Level 0: unit step over [-kMaxAbscissa, kMaxAbscissa].
  double step = 1.0;
  Complex sum = accumulate(0.0);
  for (double x = step; x <= kMaxAbscissa; x += step) {
    sum += accumulate(x) + accumulate(-x);
  }
  Complex estimate = sum * step;
  out.value = estimate;
  out.err_estimate = std::abs(estimate);
  out.converged = false;

  for (int level = 1; level <= cfg.max_level; ++level) {
    step *= 0.5;
    for (double x = step; x <= kMaxAbscissa; x += 2.0 * step) {
      sum += accumulate(x) + accumulate(-x);
    }
    Complex next = sum * step;
    double err = std::abs(next - estimate);
    // Rounding floor: the level difference cannot resolve below a few ulp.
    err = std::max(err, 8.0 * kEps * std::abs(next));
    estimate = next;
    out.value = estimate;
    out.err_estimate = err;
    out.abs_integral = abs_sum * step;
    double floor = 64.0 * kEps * out.abs_integral;
    if (level >= 3 && err <= std::max(target(cfg, estimate), floor)) {
      out.converged = true;
      break;
    }
  }
  if (smallest_node) *smallest_node = tmin;
  return out;
}

IntegralResult gauss_kronrod(const Integrand& h, double a, double b, double tol,
                             int max_level, std::size_t initial_panels) {
  IntegralResult out;
  if (!(b > a)) return out;
  initial_panels = std::max<std::size_t>(initial_panels, 1);
  const std::size_t cap =
      std::max<std::size_t>(initial_panels * 4, std::size_t{1} << (max_level + 2));

  std::priority_queue<Panel> heap;
  Complex total{};
  double err = 0.0;
  double abs_total = 0.0;
  double width = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t k = 0; k < initial_panels; ++k) {
    double lo = a + width * static_cast<double>(k);
    double hi = (k + 1 == initial_panels) ? b : lo + width;
    Panel p = kronrod15(h, lo, hi, out.evaluations);
    total += p.value;
    err += p.err;
    abs_total += p.abs_value;
    heap.push(p);
  }
  auto floor = [&] { return 64.0 * kEps * abs_total; };
  while (err > std::max(tol, floor()) && heap.size() < cap) {
    Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Panel left = kronrod15(h, worst.a, mid, out.evaluations);
    Panel right = kronrod15(h, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }
  // Recompute from the panels so accumulated update noise does not leak.
  total = {};
  err = 0.0;
  abs_total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().err;
    abs_total += heap.top().abs_value;
    heap.pop();
  }
  out.value = total;
  out.err_estimate = err;
  out.abs_integral = abs_total;
  out.converged = err <= std::max(tol, floor());
  return out;
}

namespace {

struct Truncation {
  double point;
  double tail_bound;
  std::size_t evaluations;
};

// Smallest probe point T >= start past which the envelope `env` (times the
// integral of the decay beyond T) is below `tol`.
Truncation find_truncation(const std::function<double(double)>& env,
                           double start, double decay, double growth_power,
                           double tol) {
  Truncation tr{start, 0.0, 0};
  // The envelope t^s e^{-ct} only decays past t = s/c.
  double peak = std::max(0.0, growth_power) / decay;
  double step = 1.0 / decay;
  double t = start;
  for (int k = 0; k < 4000; ++k) {
    double m = 0.0;
    for (double f : {1.0, 1.05, 1.1}) {
      m = std::max(m, env(t * f));
      ++tr.evaluations;
    }
    double bound = m * 2.0 / decay;
    if (t >= 2.0 * peak && bound <= tol) {
      tr.point = t;
      tr.tail_bound = bound;
      return tr;
    }
    t = (k < 64) ? t + step : t * 1.25;
    if (!std::isfinite(t) || t > 1e7) break;
  }
  throw ConvergenceError(
      "integrand does not decay fast enough to truncate the tail (check "
      "truncation_decay and that Im(alpha) > 0)");
}

}  // namespace

IntegralResult integrate_singular_decaying(const Integrand& g, double s,
                                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(s > -1.0)) {
    throw PreconditionError("integrate_singular_decaying: requires s > -1");
  }
  std::size_t evals = 0;
  auto integrand = [&](double t) {
    ++evals;
    return std::pow(t, s) * g(t);
  };

  constexpr double split = 1.0;
  double tmin = split;
  IntegralResult head = tanh_sinh_left(integrand, split, cfg, &tmin);
  // Missing sliver (0, tmin): g is bounded, so g(tmin) tmin^{s+1}/(s+1).
  Complex sliver = g(tmin) * std::pow(tmin, s + 1.0) / (s + 1.0);
  ++evals;
  head.value += sliver;

  double tol = target(cfg, head.value);
  auto env = [&](double t) { return std::abs(integrand(t)); };
  Truncation tr =
      find_truncation(env, split, cfg.truncation_decay, s, 0.05 * tol);
  std::size_t panels = static_cast<std::size_t>(
      std::clamp(std::ceil(tr.point - split), 1.0, 4096.0));
  IntegralResult tail =
      gauss_kronrod(integrand, split, tr.point, 0.5 * tol, cfg.max_level, panels);

  IntegralResult out;
  out.value = head.value + tail.value;
  out.err_estimate = head.err_estimate + tail.err_estimate + tr.tail_bound +
                     std::abs(sliver) * kEps;
  out.evaluations = evals;
  out.abs_integral = head.abs_integral + tail.abs_integral;
  out.converged = head.converged && tail.converged;
  double allowed = std::max(target(cfg, out.value), 64.0 * kEps * out.abs_integral);
  if (!out.converged || out.err_estimate > allowed) {
    throw ConvergenceError(
        "integrate_singular_decaying: no convergence at max_level " +
        std::to_string(cfg.max_level) + " (err " +
        std::to_string(out.err_estimate) + ")");
  }
  return out;
}

IntegralResult integrate_marchaud(Complex d0, const Integrand& f, Complex delta,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(delta.real() > 0.0 && delta.real() < 1.0)) {
    throw PreconditionError("integrate_marchaud: requires 0 < Re(delta) < 1");
  }
  std::size_t evals = 0;
  auto diff = [&](double u) {
    ++evals;
    return d0 - f(u);
  };

  // Lipschitz check at the origin: |d0 - f(u)|/u must stay bounded.
  std::array<double, 4> us = {1e-3, 1e-4, 1e-5, 1e-6};
  std::array<double, 4> ratios{};
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < us.size(); ++k) {
    ratios[k] = std::abs(diff(us[k])) / us[k];
    lipschitz = std::max(lipschitz, ratios[k]);
  }
  // Differences at rounding level carry no information about the slope.
  const double noise = 1e-10 * std::max(1.0, std::abs(d0));
  if (ratios.back() * us.back() > noise) {
    double slope = (ratios.front() > 0.0)
                       ? std::log(ratios.back() / ratios.front()) /
                             std::log(us.back() / us.front())
                       : -1.0;
    if (slope < -0.25 && ratios.back() > 10.0 * ratios.front()) {
      throw PreconditionError(
          "integrate_marchaud: d0 - f(u) is not O(u) at the origin");
    }
  }

  // Below eps the difference is replaced by its quadratic model
  // c1 u + c2 u^2, fitted at eps and eps/2.
  const double eps = 1e-7 / std::max(1.0, lipschitz);
  const Complex d_half = diff(0.5 * eps), d_full = diff(eps);
  const Complex c1 = (4.0 * d_half - d_full) / eps;
  const Complex c2 = 2.0 * (d_full - 2.0 * d_half) / (eps * eps);
  const Complex one_plus = 1.0 + delta;
  auto head_integrand = [&](double u) -> Complex {
    if (u < eps) return (c1 + c2 * u) * std::exp(-delta * std::log(u));
    return diff(u) * std::exp(-one_plus * std::log(u));
  };

  double tmin = 1.0;
  IntegralResult head = tanh_sinh_left(head_integrand, 1.0, cfg, &tmin);
  Complex sliver = c1 * std::exp((1.0 - delta) * std::log(tmin)) / (1.0 - delta) +
                   c2 * std::exp((2.0 - delta) * std::log(tmin)) / (2.0 - delta);
  head.value += sliver;

  // Tail on [1, inf): d0/delta - int f(u) u^{-1-delta} du.
  auto tail_integrand = [&](double u) -> Complex {
    ++evals;
    return f(u) * std::exp(-one_plus * std::log(u));
  };
  Complex exact_part = d0 / delta;
  double tol = target(cfg, head.value + exact_part);
  auto env = [&](double u) { return std::abs(tail_integrand(u)); };
  Truncation tr;
  Integrand tail_fn = tail_integrand;
  try {
    tr = find_truncation(env, 1.0, cfg.truncation_decay, 0.0, 0.05 * tol);
  } catch (const ConvergenceError&) {
    // f does not decay; the difference itself may still vanish on the tail
    // (f constant at d0, for instance).
    tail_fn = [&](double u) -> Complex { return -diff(u) * std::exp(-one_plus * std::log(u)); };
    exact_part = 0.0;
    auto env_diff = [&](double u) { return std::abs(tail_fn(u)); };
    tr = find_truncation(env_diff, 1.0, cfg.truncation_decay, 0.0, 0.05 * tol);
  }
  std::size_t panels = static_cast<std::size_t>(
      std::clamp(std::ceil(tr.point - 1.0), 1.0, 4096.0));
  IntegralResult tail =
      gauss_kronrod(tail_fn, 1.0, tr.point, 0.5 * tol, cfg.max_level, panels);

  IntegralResult out;
  out.value = head.value + exact_part - tail.value;
  out.err_estimate = head.err_estimate + tail.err_estimate + tr.tail_bound;
  out.evaluations = evals;
  out.abs_integral = head.abs_integral + tail.abs_integral + std::abs(exact_part);
  out.converged = head.converged && tail.converged;
  double allowed = std::max(target(cfg, out.value), 64.0 * kEps * out.abs_integral);
  if (!out.converged || out.err_estimate > allowed) {
    throw ConvergenceError("integrate_marchaud: no convergence at max_level " +
                           std::to_string(cfg.max_level) + " (err " +
                           std::to_string(out.err_estimate) + ")");
  }
  return out;
}

}  // namespace fracmean
