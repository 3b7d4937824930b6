#include "fracmean/characterize.hpp"

#include <cmath>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

DivergenceReport finish(std::vector<double> sums) {
  DivergenceReport r;
  std::size_t N = sums.size();
  std::size_t lo = (N + 1) / 2;  // n = N/2 .. N, 1-based
  double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
  for (std::size_t n = lo; n <= N; ++n) {
    double x = std::log(static_cast<double>(n));
    double y = sums[n - 1];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    k += 1;
  }
  r.log_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  r.verdict = r.log_slope > 0.5 ? Verdict::DivergenceIndicated : Verdict::Inconclusive;
  r.partial_sums = std::move(sums);
  return r;
}

}  // namespace

MomentEstimate moment_function(const DistributionModel& m, Complex alpha, Complex lambda,
                               Route route, const RouteConfig& cfg) {
  return fractional_moment(m, alpha, lambda, route, cfg);
}

SequenceTag parse_sequence_tag(const std::string& s) {
  if (s == "harmonic") return SequenceTag::Harmonic;
  if (s == "geometric") return SequenceTag::Geometric;
  if (s == "quadratic") return SequenceTag::Quadratic;
  if (s == "constant") return SequenceTag::Constant;
  throw ConfigError("unknown sequence '" + s + "' (harmonic|geometric|quadratic|constant)");
}

const char* to_string(SequenceTag t) noexcept {
  switch (t) {
    case SequenceTag::Harmonic:
      return "harmonic";
    case SequenceTag::Geometric:
      return "geometric";
    case SequenceTag::Quadratic:
      return "quadratic";
    case SequenceTag::Constant:
      return "constant";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::DivergenceIndicated ? "DivergenceIndicated" : "Inconclusive";
}

AlphaSequence alpha_sequence(double a, SequenceTag tag, int N) {
  if (!(a > 0.0)) throw ConfigError("alpha sequence: a must be positive");
  AlphaSequence s;
  s.a = a;
  for (int n = 1; n <= N; ++n) {
    // e = 1 - |phi_a(z_n)|; z = i((a+1) - r(a-1)) / (1 - r) with r = 1 - e
    double e = 1.0;
    switch (tag) {
      case SequenceTag::Harmonic:
        e = 1.0 / n;
        break;
      case SequenceTag::Geometric:
        e = std::ldexp(1.0, -n);
        break;
      case SequenceTag::Quadratic:
        e = 1.0 / (static_cast<double>(n) * n);
        break;
      case SequenceTag::Constant:
        e = 1.0;
        break;
    }
    s.points.emplace_back(0.0, ((a + 1.0) - (1.0 - e) * (a - 1.0)) / e);
  }
  return s;
}

LambdaSequence lambda_sequence(SequenceTag tag, int N, double im_bound) {
  LambdaSequence s;
  s.im_bound = im_bound;
  for (int n = 1; n <= N; ++n) {
    double v = 1.0;
    switch (tag) {
      case SequenceTag::Harmonic:
        v = n;
        break;
      case SequenceTag::Geometric:
        v = std::ldexp(1.0, n);
        break;
      case SequenceTag::Quadratic:
        v = static_cast<double>(n) * n;
        break;
      case SequenceTag::Constant:
        v = 1.0;
        break;
    }
    s.points.emplace_back(-v, 0.0);
  }
  return s;
}

Complex blaschke_factor(double a, Complex z) {
  return (z - Complex{0.0, a + 1.0}) / (z - Complex{0.0, a - 1.0});
}

DivergenceReport blaschke_divergence_check(const AlphaSequence& seq) {
  if (seq.points.size() < 10) throw PreconditionError("blaschke: need N >= 10");
  std::vector<double> sums;
  double s = 0.0;
  for (Complex z : seq.points) {
    if (!(z.imag() > seq.a))
      throw PreconditionError("blaschke: point with Im(z) <= a");
    // 1 - |phi| = (1 - |phi|^2) / (1 + |phi|), 1 - |phi|^2 = 4 (y - a) / |z - (a-1)i|^2
    double one_minus_sq = 4.0 * (z.imag() - seq.a) / std::norm(z - Complex{0.0, seq.a - 1.0});
    double mod = std::abs(blaschke_factor(seq.a, z));
    s += one_minus_sq / (1.0 + mod);
    sums.push_back(s);
  }
  return finish(std::move(sums));
}

DivergenceReport muntz_divergence_check(const LambdaSequence& seq) {
  if (seq.points.size() < 10) throw PreconditionError("muntz: need N >= 10");
  std::vector<double> sums;
  double s = 0.0, sup_im = 0.0;
  for (Complex l : seq.points) {
    if (!(l.real() < 0.0)) throw PreconditionError("muntz: point with Re(lambda) >= 0");
    s += 1.0 / (-l.real());
    sup_im = std::max(sup_im, std::abs(l.imag()));
    sums.push_back(s);
  }
  DivergenceReport r = finish(std::move(sums));
  r.sup_im = sup_im;
  r.bound_ok = sup_im <= seq.im_bound;
  return r;
}

const char* verdict_text(const DistinguishReport& r) noexcept {
  return r.distinct ? "distinct" : "not distinguished at this resolution";
}

DistinguishReport distinguish(const DistributionModel& a, const DistributionModel& b,
                              const DistinguishMode& mode, Route route, const RouteConfig& cfg) {
  DistinguishReport rep;
  std::vector<std::pair<Complex, Complex>> grid;
  if (const auto* fl = std::get_if<FixLambda>(&mode)) {
    for (Complex al : fl->alphas) grid.emplace_back(al, fl->lambda);
  } else {
    const auto& fa = std::get<FixAlpha>(mode);
    for (Complex l : fa.lambdas) grid.emplace_back(fa.alpha, l);
  }
  if (grid.empty()) throw ConfigError("distinguish: empty evaluation grid");
  rep.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto [alpha, lambda] = grid[i];
    RouteConfig ca = cfg, cb = cfg;
    ca.mc.seed = mix_seed(cfg.mc.seed, 2 * i);
    cb.mc.seed = mix_seed(cfg.mc.seed, 2 * i + 1);
    DistinguishPoint& pt = rep.points[i];
    pt.alpha = alpha;
    pt.lambda = lambda;
    pt.a = moment_function(a, alpha, lambda, route, ca);
    pt.b = moment_function(b, alpha, lambda, route, cb);
    pt.discrepancy = std::abs(pt.a.value - pt.b.value);
    pt.uncertainty = std::hypot(pt.a.uncertainty, pt.b.uncertainty);
    if (i == 0 || pt.discrepancy > rep.max_discrepancy) {
      rep.max_discrepancy = pt.discrepancy;
      rep.combined_uncertainty = pt.uncertainty;
    }
  }
  rep.distinct = rep.max_discrepancy > 5.0 * rep.combined_uncertainty;
  return rep;
}

}  // namespace fracmean
