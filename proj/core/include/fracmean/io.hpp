#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracmean/bounds.hpp"
#include "fracmean/characterize.hpp"
#include "fracmean/distributions.hpp"
#include "fracmean/frac_moment.hpp"

namespace fracmean {

using nlohmann::json;

// Complex literal: a, bi, a+bi, a-bi (no spaces; i alone means 1i;
// exponents allowed, e.g. 1e-3-2.5e1i). ConfigError with the expected
// grammar otherwise.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

// Flat "k=v,k=v" list. Keys: cauchy/t3 mu, sigma; poincare a, b, c;
// twopoint z1, z2, w; point z; empirical file (CSV with re,im header).
DistributionModel parse_model(std::string_view dist, std::string_view params);

// {"dist": name, "params": {...}}; empirical laws may carry "samples" as
// [[re, im], ...] or complex literals.
DistributionModel model_from_json(const json& j);
json to_json(const DistributionModel& m);

json to_json(Complex z);
json to_json(const QuadratureConfig& c);
json to_json(const MCConfig& c);
json to_json(const MomentEstimate& e);
json to_json(const ScanResult& s);
json to_json(const DivergenceReport& r);
json to_json(const DistinguishReport& r);
json to_json(const BoundReport& r);
json to_json(const SllnTrajectory& t);

std::vector<Complex> read_samples_csv(std::istream& in);
void write_samples_csv(std::ostream& out, const std::vector<Complex>& samples);
// columns p,re,im,uncertainty,method (empty numbers on failed rows)
void write_scan_csv(std::ostream& out, const ScanResult& s);
// columns n,re,im,target_re,target_im
void write_trajectory_csv(std::ostream& out, const SllnTrajectory& t);

}  // namespace fracmean
