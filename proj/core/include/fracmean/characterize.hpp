#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracmean/frac_moment.hpp"

namespace fracmean {

// F(alpha, lambda) = E[(X + alpha)^lambda]; delegates to fractional_moment.
MomentEstimate moment_function(const DistributionModel& m, Complex alpha, Complex lambda,
                               Route route, const RouteConfig& cfg);

// Closed-form sequence families. For alpha sequences the tag fixes
// 1 - |phi_a(z_n)|: 1/n, 2^{-n}, 1/n^2 or 1 (z_n = (a+1)i). For lambda
// sequences it fixes lambda_n: -n, -2^n, -n^2 or -1.
enum class SequenceTag { Harmonic, Geometric, Quadratic, Constant };

SequenceTag parse_sequence_tag(const std::string& s);
const char* to_string(SequenceTag t) noexcept;

struct AlphaSequence {
  double a = 1.0;
  std::vector<Complex> points;  // truncation N = points.size()
};

struct LambdaSequence {
  std::vector<Complex> points;
  double im_bound = 0.0;
};

AlphaSequence alpha_sequence(double a, SequenceTag tag, int N);
LambdaSequence lambda_sequence(SequenceTag tag, int N, double im_bound = 0.0);

// phi_a(z) = (z - (a+1)i) / (z - (a-1)i)
Complex blaschke_factor(double a, Complex z);

enum class Verdict { DivergenceIndicated, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct DivergenceReport {
  std::vector<double> partial_sums;
  double log_slope = 0.0;  // least-squares slope of S_n against ln n, n in [N/2, N]
  Verdict verdict = Verdict::Inconclusive;
  bool bound_ok = true;    // lambda sequences: sup |Im| <= im_bound
  double sup_im = 0.0;
};

// Partial sums of 1 - |phi_a(z_n)|. PreconditionError when N < 10 or a
// point has Im(z_n) <= a.
DivergenceReport blaschke_divergence_check(const AlphaSequence& seq);

// Partial sums of 1 / (-Re lambda_n). PreconditionError when N < 10 or
// Re(lambda_n) >= 0; a violated imaginary bound is only reported.
DivergenceReport muntz_divergence_check(const LambdaSequence& seq);

struct FixLambda {
  Complex lambda;
  std::vector<Complex> alphas;
};

struct FixAlpha {
  Complex alpha;
  std::vector<Complex> lambdas;
};

using DistinguishMode = std::variant<FixLambda, FixAlpha>;

struct DistinguishPoint {
  Complex alpha;
  Complex lambda;
  MomentEstimate a;
  MomentEstimate b;
  double discrepancy = 0.0;
  double uncertainty = 0.0;
};

struct DistinguishReport {
  std::vector<DistinguishPoint> points;
  double max_discrepancy = 0.0;
  double combined_uncertainty = 0.0;  // at the point of max discrepancy
  bool distinct = false;              // max_discrepancy > 5 combined_uncertainty
};

const char* verdict_text(const DistinguishReport& r) noexcept;

// Monte Carlo points use independent seeds derived from cfg.mc.seed for
// each model and point.
DistinguishReport distinguish(const DistributionModel& a, const DistributionModel& b,
                              const DistinguishMode& mode, Route route, const RouteConfig& cfg);

}  // namespace fracmean
