#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "fracmean/montecarlo.hpp"
#include "fracmean/parallel.hpp"
#include "fracmean/rng.hpp"

using namespace fracmean;

TEST_SUITE("rng") {
  TEST_CASE("philox4x32-10 known answers") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams are reproducible and distinct") {
    PhiloxStream a(5, 0), b(5, 0), c(5, 1);
    std::set<std::uint64_t> seen;
    for (int k = 0; k < 100; ++k) {
      auto x = a();
      CHECK(x == b());
      seen.insert(x);
      seen.insert(c());
    }
    CHECK(seen.size() == 200);
  }

  TEST_CASE("uniform and normal moments") {
    PhiloxStream r(1, 2);
    double s = 0, s2 = 0, n1 = 0, n2 = 0;
    const int N = 200000;
    for (int k = 0; k < N; ++k) {
      double u = r.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      s += u;
      s2 += u * u;
      double z = r.normal();
      n1 += z;
      n2 += z * z;
    }
    CHECK(s / N == doctest::Approx(0.5).epsilon(0.01));
    CHECK(s2 / N == doctest::Approx(1.0 / 3.0).epsilon(0.01));
    CHECK(std::abs(n1 / N) < 0.01);
    CHECK(n2 / N == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("mc_mean does not depend on the thread count") {
    MCConfig mc;
    mc.samples = 50000;
    mc.seed = 3;
    auto rep = [](PhiloxStream& r) { return Complex{r.normal(), r.uniform()}; };
    setenv("FRACMEAN_THREADS", "1", 1);
    MCResult one = mc_mean(mc, rep);
    setenv("FRACMEAN_THREADS", "4", 1);
    MCResult four = mc_mean(mc, rep);
    unsetenv("FRACMEAN_THREADS");
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
    CHECK(one.samples == 50000);
    CHECK(std::abs(one.mean - Complex{0.0, 0.5}) < 4.0 * one.std_error);
  }

  TEST_CASE("accumulator merge matches a single pass") {
    ComplexAccumulator all, left, right;
    PhiloxStream r(9, 9);
    for (int k = 0; k < 1000; ++k) {
      Complex z{r.normal(), r.normal()};
      all.add(z);
      (k < 300 ? left : right).add(z);
    }
    left.merge(right);
    CHECK(std::abs(left.mean() - all.mean()) < 1e-14);
    CHECK(left.standard_error() == doctest::Approx(all.standard_error()).epsilon(1e-12));
  }

  TEST_CASE("parallel_for visits every index and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(10, [](std::size_t i) {
      if (i == 3) throw std::runtime_error("boom");
    }));
  }
}
