#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "fracmean/complex.hpp"
#include "fracmean/rng.hpp"

namespace fracmean {

struct MCConfig {
  std::size_t samples = 100000;  // replications
  std::uint64_t seed = 7;
  std::size_t batch = 4096;  // replications per stream block

  void validate() const;
};

struct MCResult {
  Complex mean;
  double std_error = 0.0;  // sqrt(var_re + var_im) / sqrt(N)
  std::size_t samples = 0;
};

// Running mean and second moments of a complex sample, mergeable in a
// fixed order (Chan et al.).
class ComplexAccumulator {
 public:
  void add(Complex z);
  void merge(const ComplexAccumulator& other);

  std::size_t count() const { return n_; }
  Complex mean() const { return {mean_re_, mean_im_}; }
  double standard_error() const;

 private:
  std::size_t n_ = 0;
  double mean_re_ = 0.0, mean_im_ = 0.0;
  double m2_re_ = 0.0, m2_im_ = 0.0;
};

// Mean of replicate(rng) over mc.samples replications. Block b of
// mc.batch replications draws from PhiloxStream(mc.seed, b); blocks are
// merged in index order, so the result is independent of threading.
MCResult mc_mean(const MCConfig& mc, const std::function<Complex(PhiloxStream&)>& replicate);

}  // namespace fracmean
