#include "fracmean/montecarlo.hpp"

#include <cmath>
#include <vector>

#include "fracmean/error.hpp"
#include "fracmean/parallel.hpp"

namespace fracmean {

void MCConfig::validate() const {
  if (samples < 2) throw ConfigError("mc: need at least 2 samples");
  if (batch < 1) throw ConfigError("mc: batch must be positive");
}

void ComplexAccumulator::add(Complex z) {
  ++n_;
  double dn = static_cast<double>(n_);
  double dr = z.real() - mean_re_;
  double di = z.imag() - mean_im_;
  mean_re_ += dr / dn;
  mean_im_ += di / dn;
  m2_re_ += dr * (z.real() - mean_re_);
  m2_im_ += di * (z.imag() - mean_im_);
}

void ComplexAccumulator::merge(const ComplexAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
  double n = na + nb;
  double dr = o.mean_re_ - mean_re_;
  double di = o.mean_im_ - mean_im_;
  mean_re_ += dr * nb / n;
  mean_im_ += di * nb / n;
  m2_re_ += o.m2_re_ + dr * dr * na * nb / n;
  m2_im_ += o.m2_im_ + di * di * na * nb / n;
  n_ += o.n_;
}

double ComplexAccumulator::standard_error() const {
  if (n_ < 2) return 0.0;
  double dn = static_cast<double>(n_);
  return std::sqrt((m2_re_ + m2_im_) / (dn - 1.0) / dn);
}

MCResult mc_mean(const MCConfig& mc, const std::function<Complex(PhiloxStream&)>& replicate) {
  mc.validate();
  std::size_t blocks = (mc.samples + mc.batch - 1) / mc.batch;
  std::vector<ComplexAccumulator> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    PhiloxStream rng(mc.seed, b);
    std::size_t count = std::min(mc.batch, mc.samples - b * mc.batch);
    ComplexAccumulator acc;
    for (std::size_t i = 0; i < count; ++i) acc.add(replicate(rng));
    parts[b] = acc;
  });
  ComplexAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return {total.mean(), total.standard_error(), total.count()};
}

}  // namespace fracmean
