#include "fracmean_app/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "fracmean/bounds.hpp"
#include "fracmean/characterize.hpp"
#include "fracmean/error.hpp"
#include "fracmean/frac_moment.hpp"
#include "fracmean/io.hpp"

namespace fracmean::app {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  std::ostringstream o;
  o << std::setprecision(3) << std::scientific << x;
  return o.str();
}

CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

MCConfig mc_with(std::uint64_t seed, std::size_t samples) {
  MCConfig mc;
  mc.seed = seed;
  mc.samples = samples;
  return mc;
}

RouteConfig routes_with(std::uint64_t seed, std::size_t samples) {
  RouteConfig rc;
  rc.mc = mc_with(seed, samples);
  return rc;
}

json cell(const MomentEstimate& e, Complex target) {
  double dev = std::abs(e.value - target);
  return {{"value", to_json(e.value)},
          {"uncertainty", e.uncertainty},
          {"deviation", dev},
          {"z", e.uncertainty > 0 ? dev / e.uncertainty : 0.0}};
}

// 1: Cauchy power means are gamma + alpha for every p < 0 and n.
CriterionResult c1(std::uint64_t seed) {
  CriterionResult r = start(1, "Cauchy power-mean invariance (Monte Carlo)");
  DistributionModel m = Cauchy{0.0, 1.0};
  Complex target{0.0, 2.0};
  r.passed = true;
  bool only_stderr = true;
  std::ostringstream detail;
  for (double p : {-1.0, -0.5, -0.1}) {
    for (int n : {2, 5}) {
      auto t0 = std::chrono::steady_clock::now();
      MomentEstimate e = power_mean_expectation(m, {p, n, kI}, Route::MonteCarlo,
                                                routes_with(seed, 100000));
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json c = cell(e, target);
      c["p"] = p;
      c["n"] = n;
      bool within = std::abs(e.value - target) <= 4.0 * e.uncertainty;
      bool small = e.uncertainty <= 0.02;
      bool fast = secs <= 30.0;
      c["within_4se"] = within;
      c["stderr_ok"] = small;
      r.data["cells"].push_back(c);
      if (!(within && small && fast)) {
        r.passed = false;
        if (!within || !fast) only_stderr = false;
        detail << " p=" << p << ",n=" << n << ": stderr " << e.uncertainty
               << (within ? "" : " dev>4se") << (fast ? "" : " slow") << ";";
      }
    }
  }
  // The p = -1, n = 2 power mean 2(X1+i)(X2+i)/(X1+X2+2i) has an
  // infinite second moment (X1 ~ -X2 cancellation), so its stderr is
  // not controlled by the replication count.
  r.expected_failure = !r.passed && only_stderr;
  r.detail = r.passed ? "all 6 cells within 4 stderr, stderr <= 0.02" : "failing:" + detail.str();
  return r;
}

// 2: Poincare power means equal -b/a + (D/a) i.
CriterionResult c2(std::uint64_t seed) {
  CriterionResult r = start(2, "Poincare power-mean invariance (Monte Carlo)");
  r.passed = true;
  int fails = 0;
  for (auto [m, target] : {std::pair<DistributionModel, Complex>{Poincare{1, 0, 1}, {0.0, 1.0}},
                           std::pair<DistributionModel, Complex>{Poincare{2, 1, 1}, {-0.5, 0.5}}}) {
    for (double p : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      for (int n : {2, 5}) {
        MomentEstimate e = power_mean_expectation(m, {p, n, 0.0}, Route::MonteCarlo,
                                                  routes_with(seed, 100000));
        json c = cell(e, target);
        c["model"] = to_json(m);
        c["p"] = p;
        c["n"] = n;
        r.data["cells"].push_back(c);
        if (std::abs(e.value - target) > 4.0 * e.uncertainty) {
          r.passed = false;
          ++fails;
        }
      }
    }
  }
  r.detail = std::to_string(20 - fails) + "/20 cells within 4 stderr";
  return r;
}

// 3: the t3 power mean is a non-constant polynomial of degree n-1 in p.
CriterionResult c3(std::uint64_t seed) {
  CriterionResult r = start(3, "t3 non-constancy and degree");
  DistributionModel m = ScaledT3{0.0, 1.0};
  Complex alpha = kI;
  Complex w = gamma_point(m) + alpha;
  RouteConfig rc = routes_with(seed, 100000);
  MomentEstimate a = power_mean_expectation(m, {-0.9, 2, alpha}, Route::Closed, rc);
  MomentEstimate b = power_mean_expectation(m, {-0.1, 2, alpha}, Route::Closed, rc);
  bool differ = a.value != b.value;
  bool mc_ok = true;
  for (auto [p, cl] : {std::pair{-0.9, a}, std::pair{-0.1, b}}) {
    MomentEstimate e = power_mean_expectation(m, {p, 2, alpha}, Route::MonteCarlo, rc);
    json c = cell(e, cl.value);
    c["p"] = p;
    c["closed"] = to_json(cl.value);
    r.data["mc"].push_back(c);
    mc_ok = mc_ok && std::abs(e.value - cl.value) <= 4.0 * e.uncertainty;
  }
  // least-squares line through the closed values on p = -0.9..-0.1
  std::vector<double> ps;
  std::vector<Complex> vs;
  for (int k = 9; k >= 1; --k) {
    ps.push_back(-0.1 * k);
    vs.push_back(power_mean_expectation(m, {-0.1 * k, 2, alpha}, Route::Closed, rc).value);
  }
  double np = static_cast<double>(ps.size()), sx = 0, sxx = 0;
  Complex sy = 0, sxy = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    sx += ps[i];
    sxx += ps[i] * ps[i];
    sy += vs[i];
    sxy += ps[i] * vs[i];
  }
  Complex slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
  Complex icpt = (sy - slope * sx) / np;
  double resid = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    resid = std::max(resid, std::abs(vs[i] - (icpt + slope * ps[i])));
  std::vector<Complex> coeffs = t3_power_mean_coefficients(w, 1.0, 2);
  double expected_mag = 1.0 / (4.0 * std::abs(w));  // (n-1)! / (n^n |w|^{n-1})
  Complex lead = coeffs.back();
  bool degree_ok = coeffs.size() == 2 && resid <= 1e-10;
  bool mag_ok = std::abs(std::abs(lead) - expected_mag) <= 1e-8 &&
                std::abs(std::abs(slope) - expected_mag) <= 1e-8;
  r.data["closed_m09"] = to_json(a.value);
  r.data["closed_m01"] = to_json(b.value);
  r.data["fit_residual"] = resid;
  r.data["fit_slope"] = to_json(slope);
  r.data["leading_coefficient"] = to_json(lead);
  r.data["expected_magnitude"] = expected_mag;
  r.passed = differ && mc_ok && degree_ok && mag_ok;
  std::ostringstream d;
  d << "E(-0.9)=" << format_complex(a.value) << " E(-0.1)=" << format_complex(b.value)
    << " residual=" << resid << " leading=" << format_complex(lead);
  r.detail = d.str();
  return r;
}

// 4: Riemann-Liouville quadrature vs closed forms.
CriterionResult c4() {
  CriterionResult r = start(4, "route equivalence, negative order");
  QuadratureConfig q;
  double worst = 0.0;
  auto check = [&](const DistributionModel& m, Complex alpha, Complex lambda, Complex want) {
    MomentEstimate e = frac_moment_neg(m, alpha, FracOrder(lambda), q);
    double err = rel_err(e.value, want);
    worst = std::max(worst, err);
    r.data["cells"].push_back({{"model", to_json(m)},
                               {"lambda", to_json(lambda)},
                               {"value", to_json(e.value)},
                               {"rel_err", err}});
  };
  for (Complex l : {Complex{-0.25}, Complex{-0.5}, Complex{-0.9}, Complex{-0.5, 0.3}})
    check(Cauchy{0, 1}, kI, l, principal_pow(Complex{0, 2}, l));
  for (Complex l : {Complex{-0.5}, Complex{-1.0}})
    check(Poincare{1, 0, 1}, 0.0, l, principal_pow(kI, l));
  r.passed = worst <= 1e-6;
  r.detail = "max relative error " + sci(worst);
  return r;
}

// 5: Marchaud quadrature vs closed forms.
CriterionResult c5() {
  CriterionResult r = start(5, "route equivalence, positive order");
  QuadratureConfig q;
  double worst = 0.0;
  for (double l : {0.5, 1.5}) {
    MomentEstimate e = frac_moment_pos(Poincare{1, 0, 1}, 0.0, FracOrder(l), q);
    double err = rel_err(e.value, principal_pow(kI, l));
    worst = std::max(worst, err);
    r.data["cells"].push_back({{"lambda", l}, {"value", to_json(e.value)}, {"rel_err", err}});
  }
  r.passed = worst <= 1e-4;
  r.detail = "max relative error " + sci(worst);
  return r;
}

// 6: fractional-derivative route for power means.
CriterionResult c6() {
  CriterionResult r = start(6, "fractional-derivative route for power means");
  RouteConfig rc;
  double worst = 0.0;
  for (double p : {-0.5, 0.5}) {
    MomentEstimate e = power_mean_expectation(Poincare{1, 0, 1}, {p, 2, 0.0}, Route::Quad, rc);
    double err = rel_err(e.value, kI);
    worst = std::max(worst, err);
    r.data["cells"].push_back({{"p", p}, {"value", to_json(e.value)}, {"rel_err", err}});
  }
  r.passed = worst <= 1e-4;
  r.detail = "max relative error " + sci(worst);
  return r;
}

// 7: Gamma values, recurrence, reflection and the t3 product identity.
CriterionResult c7() {
  CriterionResult r = start(7, "Gamma and identity self-tests");
  double half = std::abs(gamma(0.5) - std::sqrt(kPi));
  double rec = 0.0, refl = 0.0, prod = 0.0;
  for (double x = -4.75; x <= 5.0; x += 0.5) {
    for (double y = -3.0; y <= 3.0; y += 0.75) {
      Complex z{x, y};
      Complex g1 = gamma(z + 1.0);
      rec = std::max(rec, std::abs(g1 - z * gamma(z)) / std::abs(g1));
      Complex lhs = gamma(z) * gamma(1.0 - z);
      Complex rhs = kPi / std::sin(kPi * z);
      refl = std::max(refl, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  for (double p : {-0.9, -0.5, -0.2, -0.05}) {
    for (int k = 0; k <= 6; ++k) {
      auto [lhs, rhs] = t3_product_identity(p, k);
      prod = std::max(prod, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  r.data = {{"gamma_half_abs_err", half},
            {"recurrence_rel_err", rec},
            {"reflection_rel_err", refl},
            {"product_identity_rel_err", prod}};
  r.passed = half <= 1e-12 && rec <= 1e-10 && refl <= 1e-10 && prod <= 1e-10;
  std::ostringstream d;
  d << "gamma(1/2) err " << half << ", recurrence " << rec << ", reflection " << refl
    << ", product identity " << prod;
  r.detail = d.str();
  return r;
}

// 8: |z^l| <= C(l) |Im z|^{Re l}.
CriterionResult c8(std::uint64_t seed) {
  CriterionResult r = start(8, "power bound |z^l| <= C(l) |Im z|^Re(l)");
  PhiloxStream rng(seed, 8);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 10000; ++k) {
    double mag = std::exp(6.0 * rng.uniform() - 3.0);
    double th = kPi * (2.0 * rng.uniform() - 1.0);
    Complex z = std::polar(mag, th);
    if (z.imag() == 0.0) continue;
    Complex l{-3.0 * rng.uniform(), 6.0 * rng.uniform() - 3.0};
    if (l.real() == 0.0) continue;
    double lhs = std::abs(principal_pow(z, l));
    double rhs = power_bound_constant(l) * std::pow(std::abs(z.imag()), l.real());
    if (!(lhs <= rhs)) ++violations;
    worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  r.data = {{"pairs", 10000}, {"violations", violations}, {"max_ratio", worst_ratio}};
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations in 10^4 pairs, max |z^l|/bound " +
             sci(worst_ratio);
  return r;
}

// 9: absolute-moment bounds.
CriterionResult c9(std::uint64_t seed) {
  CriterionResult r = start(9, "absolute-moment bound suite");
  MCConfig none;
  double worst_slack = 0.0;
  for (double p : {0.25, 0.5, 0.75}) {
    BoundReport b = half_plane_bound_check(TwoPoint{1.0, -1.0, 0.5}, p, Estimator::Closed, none);
    worst_slack = std::max(worst_slack, std::abs(b.slack));
    r.data["tight"].push_back(to_json(b));
  }
  bool tight_ok = worst_slack <= 1e-15;

  PhiloxStream rng(seed, 9);
  int failures = 0;
  for (int k = 0; k < 1000; ++k) {
    double p = 2.0 * rng.uniform() - 1.0;
    DistributionModel m;
    Estimator est = Estimator::Closed;
    if (k % 2 == 0) {
      double a = 0.2 + 2.0 * rng.uniform();
      double c = 0.2 + 2.0 * rng.uniform();
      double b = (2.0 * rng.uniform() - 1.0) * 0.95 * std::sqrt(a * c);
      m = Poincare{a, b, c};
      est = Estimator::MonteCarlo;
    } else {
      auto atom = [&] { return std::polar(std::exp(3.0 * rng.uniform() - 1.5), kPi * rng.uniform()); };
      m = TwoPoint{atom(), atom(), rng.uniform()};
    }
    BoundReport b = half_plane_bound_check(m, p, est, mc_with(mix_seed(seed, k), 20000));
    if (!b.satisfied) ++failures;
  }
  bool random_ok = failures == 0;

  TwoPoint ce = cancellation_two_point(0.75);
  BoundReport cr = compare_moments(ce, 0.75, std::cos(0.75 * kPi / 2.0), Estimator::Closed, none);
  bool cancel_ok = cr.moment_abs <= 1e-15 && std::abs(cr.abs_moment - 1.0) <= 1e-15 && !cr.satisfied;
  TwoPoint literal{1.0, std::polar(1.0, (1.0 - 1.0 / 0.75) * kPi), 0.5};
  BoundReport lr = compare_moments(literal, 0.75, std::cos(0.75 * kPi / 2.0), Estimator::Closed, none);
  r.data["random_failures"] = failures;
  r.data["counterexample"] = to_json(cr);
  r.data["literal_atoms_moment_abs"] = lr.moment_abs;
  r.passed = tight_ok && random_ok && cancel_ok;
  std::ostringstream d;
  d << "tight |slack| " << worst_slack << "; random laws failing " << failures
    << "/1000; counterexample |E Z^p| = " << cr.moment_abs << ", E|Z|^p = " << cr.abs_moment;
  r.detail = d.str();
  return r;
}

// 10: determining-set validators on the six benchmark sequences.
CriterionResult c10() {
  CriterionResult r = start(10, "determining-set validators");
  struct Case {
    const char* name;
    DivergenceReport rep;
    Verdict want;
  };
  const int N = 200;
  std::vector<Case> cases = {
      {"blaschke harmonic", blaschke_divergence_check(alpha_sequence(1.0, SequenceTag::Harmonic, N)),
       Verdict::DivergenceIndicated},
      {"blaschke geometric", blaschke_divergence_check(alpha_sequence(1.0, SequenceTag::Geometric, N)),
       Verdict::Inconclusive},
      {"blaschke constant", blaschke_divergence_check(alpha_sequence(1.0, SequenceTag::Constant, N)),
       Verdict::DivergenceIndicated},
      {"muntz -n", muntz_divergence_check(lambda_sequence(SequenceTag::Harmonic, N)),
       Verdict::DivergenceIndicated},
      {"muntz -n^2", muntz_divergence_check(lambda_sequence(SequenceTag::Quadratic, N)),
       Verdict::Inconclusive},
      {"muntz -1", muntz_divergence_check(lambda_sequence(SequenceTag::Constant, N)),
       Verdict::DivergenceIndicated},
  };
  int ok = 0;
  for (const auto& c : cases) {
    bool good = c.rep.verdict == c.want;
    ok += good;
    r.data["cases"].push_back({{"sequence", c.name},
                               {"verdict", to_string(c.rep.verdict)},
                               {"S_N", c.rep.partial_sums.back()},
                               {"log_slope", c.rep.log_slope}});
  }
  r.passed = ok == 6;
  r.detail = std::to_string(ok) + "/6 verdicts as expected";
  return r;
}

// 11: distinguisher.
CriterionResult c11(std::uint64_t seed) {
  CriterionResult r = start(11, "distinguisher");
  RouteConfig rc;
  DistinguishReport d = distinguish(Cauchy{0, 1}, ScaledT3{0, 1}, FixAlpha{kI, {Complex{-0.5}}},
                                    Route::Closed, rc);
  double want = 0.125 * std::sqrt(2.0);
  bool closed_ok = std::abs(d.max_discrepancy - want) <= 1e-8;
  int same = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RouteConfig mc = routes_with(mix_seed(seed, 1000 + trial), 10000);
    DistinguishReport s = distinguish(Cauchy{0, 1}, Cauchy{0, 1}, FixAlpha{kI, {Complex{-0.5}}},
                                      Route::MonteCarlo, mc);
    same += !s.distinct;
  }
  r.data = {{"closed_max_discrepancy", d.max_discrepancy}, {"same_law_not_distinguished", same}};
  r.passed = closed_ok && same >= 95;
  std::ostringstream o;
  o << "closed discrepancy " << d.max_discrepancy << " (want " << want << "); same law not distinguished in "
    << same << "/100";
  r.detail = o.str();
  return r;
}

// 12: continuity across p, including the geometric mean at p = 0.
CriterionResult c12(std::uint64_t seed) {
  CriterionResult r = start(12, "continuity scan in p");
  std::vector<double> grid;
  for (int k = -9; k <= 9; ++k) grid.push_back(0.1 * k);
  ScanResult s = continuity_scan(Poincare{1, 0, 1}, 0.0, 2, grid, Route::MonteCarlo,
                                 routes_with(seed, 100000));
  bool all = true;
  for (const auto& row : s.rows) all = all && row.estimate.has_value();
  r.data = to_json(s);
  r.passed = all && s.max_jump_ratio <= 4.0;
  std::ostringstream d;
  d << "max jump " << s.max_jump << ", max jump / combined stderr " << s.max_jump_ratio;
  r.detail = d.str();
  return r;
}

// 13: strong law for geometric means.
CriterionResult c13(std::uint64_t seed) {
  CriterionResult r = start(13, "geometric-mean strong law");
  int close = 0;
  for (int k = 0; k < 10; ++k) {
    SllnTrajectory t = geometric_slln_demo(Poincare{1, 0, 1}, 100000, mix_seed(seed, 13 + k), 20);
    double dist = std::abs(t.points.back().running - kI);
    close += dist <= 0.05;
    r.data["final_distances"].push_back(dist);
  }
  r.passed = close >= 9;
  r.detail = std::to_string(close) + "/10 runs end within 0.05 of i";
  return r;
}

CriterionResult run_one(int id, std::uint64_t seed) {
  switch (id) {
    case 1:
      return c1(seed);
    case 2:
      return c2(seed);
    case 3:
      return c3(seed);
    case 4:
      return c4();
    case 5:
      return c5();
    case 6:
      return c6();
    case 7:
      return c7();
    case 8:
      return c8(seed);
    case 9:
      return c9(seed);
    case 10:
      return c10();
    case 11:
      return c11(seed);
    case 12:
      return c12(seed);
    case 13:
      return c13(seed);
  }
  throw ConfigError("unknown criterion " + std::to_string(id));
}

CriterionResult timed(int id, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = run_one(id, seed);
  } catch (const std::exception& ex) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<int> parse_suite(const std::string& suite) {
  std::vector<int> out;
  if (suite == "all" || suite.empty()) {
    for (int k = 1; k <= kCriterionCount; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int id = std::stoi(item, &used);
      if (used != item.size() || id < 1 || id > kCriterionCount) throw std::out_of_range("");
      out.push_back(id);
    } catch (const std::exception&) {
      throw ConfigError("suite: '" + item + "' is not a criterion number 1.." +
                        std::to_string(kCriterionCount) + " (or use 'all')");
    }
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  std::vector<int> ids = opts.criteria;
  if (ids.empty()) ids = parse_suite("all");
  std::vector<CriterionResult> out;
  json first_pass;
  for (int id : ids) {
    if (id == 14) continue;
    out.push_back(timed(id, opts.seed));
    first_pass[std::to_string(id)] = out.back().data;
    if (opts.on_result) opts.on_result(out.back());
  }
  if (std::find(ids.begin(), ids.end(), 14) != ids.end()) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = start(14, "determinism of repeated runs");
    std::vector<int> rerun;
    for (int id = 1; id <= 13; ++id) rerun.push_back(id);
    int mismatches = 0;
    for (int id : rerun) {
      json again = timed(id, opts.seed).data;
      json before = first_pass.contains(std::to_string(id)) ? first_pass[std::to_string(id)]
                                                            : timed(id, opts.seed).data;
      if (again != before) {
        ++mismatches;
        r.data["mismatched"].push_back(id);
      }
    }
    r.passed = mismatches == 0;
    r.detail = mismatches == 0 ? "criteria 1-13 reproduce identical numbers"
                               : std::to_string(mismatches) + " criteria differ between runs";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
    if (opts.on_result) opts.on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  const char* tag = r.passed ? "PASS" : (r.expected_failure ? "FAIL*" : "FAIL");
  std::snprintf(head, sizeof head, "[%-5s] %2d  %-48s %7.2f s  ", tag, r.id, r.title.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace fracmean::app
