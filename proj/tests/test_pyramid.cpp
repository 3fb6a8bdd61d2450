#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <random>
#include <span>
#include <vector>

#include "pvq/pyramid.hpp"

using Catch::Matchers::WithinAbs;

namespace {

// Independent re-implementation of the magnitude quantizer used as an oracle:
// round half-to-even, then repair the sum one unit at a time, always bumping
// the not-yet-bumped entry with the smallest residual (lowest index on ties).
// Deliberately naive — O(n^2) argmin scans instead of a sort — so a shared
// bug with the production code is unlikely.
std::vector<long long> naive_quantize_abs(std::span<const double> va,
                                          long long k) {
  const std::size_t n = va.size();
  std::vector<double> vk(n);
  std::vector<long long> vr(n);
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    vk[i] = static_cast<double>(k) * va[i];
    const double f = std::floor(vk[i]);
    const double r = vk[i] - f;
    double rounded;
    if (r > 0.5)
      rounded = f + 1.0;
    else if (r < 0.5)
      rounded = f;
    else
      rounded = (std::llabs(static_cast<long long>(f)) % 2 == 0) ? f : f + 1.0;
    vr[i] = static_cast<long long>(rounded);
    sum += vr[i];
  }
  std::vector<bool> bumped(n, false);
  while (sum != k) {
    std::size_t best = n;
    double best_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bumped[i]) continue;
      const double res =
          sum < k ? static_cast<double>(vr[i]) - vk[i]
                  : vk[i] - static_cast<double>(vr[i]) - (vr[i] > 0 ? 1.0 : 0.0);
      if (best == n || res < best_res) {
        best = i;
        best_res = res;
      }
    }
    REQUIRE(best < n);
    vr[best] += sum < k ? 1 : -1;
    sum += sum < k ? 1 : -1;
    bumped[best] = true;
  }
  return vr;
}

std::vector<double> random_simplex_abs(int l, std::mt19937_64& rng) {
  std::vector<double> v(static_cast<std::size_t>(l));
  double total = 0.0;
  for (double& x : v) {
    x = pvq::uniform01(rng);
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

TEST_CASE("round_half_even matches banker's rounding") {
  CHECK(pvq::detail::round_half_even(0.5) == 0.0);
  CHECK(pvq::detail::round_half_even(1.5) == 2.0);
  CHECK(pvq::detail::round_half_even(2.5) == 2.0);
  CHECK(pvq::detail::round_half_even(-0.5) == 0.0);
  CHECK(pvq::detail::round_half_even(-1.5) == -2.0);
  CHECK(pvq::detail::round_half_even(2.3) == 2.0);
  CHECK(pvq::detail::round_half_even(2.7) == 3.0);
  CHECK(pvq::detail::round_half_even(-2.3) == -2.0);
  CHECK(pvq::detail::round_half_even(3.0) == 3.0);
}

TEST_CASE("quantize_abs hand-checked cases") {
  using V = std::vector<long long>;
  // No repair needed: rounding already sums to k.
  CHECK(pvq::quantize_abs(std::vector<double>{0.5, 0.3, 0.2}, 4) == V{2, 1, 1});
  CHECK(pvq::quantize_abs(std::vector<double>{1.0, 0.0}, 3) == V{3, 0});
  // Overshoot: (1.5, 1.5, 0) rounds to (2, 2, 0); one decrement, ties go to
  // the lowest index.
  CHECK(pvq::quantize_abs(std::vector<double>{0.5, 0.5, 0.0}, 3) == V{1, 2, 0});
  // Undershoot: (1.0, 0.5, 0.5) rounds to (1, 0, 0); the increment goes to
  // the half that was rounded down, lowest index first.
  CHECK(pvq::quantize_abs(std::vector<double>{0.5, 0.25, 0.25}, 2) ==
        V{1, 1, 0});
  // All mass on one coordinate stays there.
  CHECK(pvq::quantize_abs(std::vector<double>{0.0, 1.0, 0.0}, 7) == V{0, 7, 0});
}

TEST_CASE("quantize_abs validates its contract") {
  CHECK_THROWS_AS(pvq::quantize_abs(std::vector<double>{0.5, 0.5}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(pvq::quantize_abs(std::vector<double>{0.7, 0.5}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(pvq::quantize_abs(std::vector<double>{1.5, -0.5}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(pvq::quantize_abs(std::vector<double>{}, 3),
                  std::invalid_argument);
}

TEST_CASE("quantize_abs agrees with the naive oracle on random input") {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 2000; ++trial) {
    const int l = 2 + static_cast<int>(pvq::uniform01(rng) * 19);
    const long long k = 1 + static_cast<long long>(pvq::uniform01(rng) * 30);
    const auto va = random_simplex_abs(l, rng);
    const auto got = pvq::quantize_abs(va, k);
    const auto want = naive_quantize_abs(va, k);
    REQUIRE(got == want);

    long long sum = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      REQUIRE(got[i] >= 0);
      sum += got[i];
      // Rounding moves at most 1/2, repair at most one more unit.
      REQUIRE(std::abs(static_cast<double>(got[i]) -
                       static_cast<double>(k) * va[i]) <= 1.5 + 1e-9);
    }
    REQUIRE(sum == k);
  }
}

TEST_CASE("quantize_abs repair under heavy half-ties") {
  // Magnitudes of the form c/(2k) make k*va land on exact halves for odd c,
  // which is the regime where tie-breaking and the repair pass matter most.
  std::mt19937_64 rng(502);
  for (int trial = 0; trial < 2000; ++trial) {
    const int l = 2 + static_cast<int>(pvq::uniform01(rng) * 10);
    const long long k = 1 + static_cast<long long>(pvq::uniform01(rng) * 12);
    // Random composition of 2k into l nonnegative parts.
    std::vector<long long> c(static_cast<std::size_t>(l), 0);
    for (long long unit = 0; unit < 2 * k; ++unit)
      c[static_cast<std::size_t>(pvq::uniform01(rng) * l)] += 1;
    std::vector<double> va(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      va[i] = static_cast<double>(c[i]) / static_cast<double>(2 * k);

    // Pre-repair rounding, to observe which entries started at zero.
    std::vector<long long> pre(va.size());
    for (std::size_t i = 0; i < va.size(); ++i)
      pre[i] = static_cast<long long>(
          pvq::detail::round_half_even(static_cast<double>(k) * va[i]));

    const auto got = pvq::quantize_abs(va, k);
    const auto want = naive_quantize_abs(va, k);
    REQUIRE(got == want);
    long long sum = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      sum += got[i];
      REQUIRE(got[i] >= 0);
      if (pre[i] == 0) {
        // A zero entry may gain a unit during repair but never lose one.
        REQUIRE(got[i] >= 0);
        REQUIRE(got[i] <= 1);
      }
    }
    REQUIRE(sum == k);
  }
}

TEST_CASE("quantize attaches input signs and reconstruct lands on the sphere") {
  std::mt19937_64 rng(503);
  for (int trial = 0; trial < 500; ++trial) {
    const int l = 2 + static_cast<int>(pvq::uniform01(rng) * 15);
    const int k = 1 + static_cast<int>(pvq::uniform01(rng) * 20);
    const double p = 0.8 + 0.8 * pvq::uniform01(rng);
    const pvq::UnitVector x = pvq::sample_sphere_uniform(l, rng);
    const pvq::PyramidPoint y =
        pvq::quantize(x, pvq::QuantizerConfig(l, k), pvq::PowerParam(p));

    REQUIRE(static_cast<int>(y.ints.size()) == l);
    for (int i = 0; i < l; ++i) {
      const long long v = y.ints[static_cast<std::size_t>(i)];
      if (v > 0) REQUIRE(x.coords()[static_cast<std::size_t>(i)] >= 0.0);
      if (v < 0) REQUIRE(x.coords()[static_cast<std::size_t>(i)] < 0.0);
    }

    const pvq::UnitVector xhat = pvq::reconstruct(y, pvq::PowerParam(p));
    CHECK_THAT(pvq::norm(xhat.coords(), 2.0), WithinAbs(1.0, 1e-12));
    for (int i = 0; i < l; ++i) {
      const long long v = y.ints[static_cast<std::size_t>(i)];
      if (v > 0) REQUIRE(xhat.coords()[static_cast<std::size_t>(i)] > 0.0);
      if (v < 0) REQUIRE(xhat.coords()[static_cast<std::size_t>(i)] < 0.0);
      if (v == 0) REQUIRE(xhat.coords()[static_cast<std::size_t>(i)] == 0.0);
    }
  }
}

TEST_CASE("quantize pipeline hand trace") {
  // (0.6, 0.8) with p = 1: L1-normalize to (3/7, 4/7), scale by k = 7 to
  // exactly (3, 4); reconstruction divides by the L2 norm 5, recovering the
  // input with zero error.
  const pvq::UnitVector x({0.6, 0.8});
  const pvq::PyramidPoint y =
      pvq::quantize(x, pvq::QuantizerConfig(2, 7), pvq::PowerParam(1.0));
  CHECK(y.ints == std::vector<long long>{3, 4});
  const pvq::UnitVector xhat = pvq::reconstruct(y, pvq::PowerParam(1.0));
  CHECK(xhat.coords()[0] == 0.6);
  CHECK(xhat.coords()[1] == 0.8);

  // A deforming exponent shifts mass toward the large coordinate before
  // rounding: (cos 0.3, sin 0.3) maps to magnitudes (0.8108, 0.1892) under
  // p = 1.24, which k = 15 rounds to (12, 3).
  const pvq::UnitVector xa({std::cos(0.3), std::sin(0.3)});
  const pvq::PyramidPoint yd =
      pvq::quantize(xa, pvq::QuantizerConfig(2, 15), pvq::PowerParam(1.24));
  CHECK(yd.ints == std::vector<long long>{12, 3});
}

TEST_CASE("reconstruct at p=1 is the plain radial decoder") {
  const pvq::PyramidPoint y(std::vector<long long>{-3, 0, 4}, 7);
  const pvq::UnitVector xhat = pvq::reconstruct(y, pvq::PowerParam(1.0));
  CHECK(xhat.coords()[0] == -0.6);
  CHECK(xhat.coords()[1] == 0.0);
  CHECK(xhat.coords()[2] == 0.8);
}

TEST_CASE("config types validate their contract") {
  CHECK_THROWS_AS(pvq::QuantizerConfig(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(pvq::QuantizerConfig(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(pvq::PowerParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(pvq::PowerParam(-2.0), std::invalid_argument);
  CHECK_THAT(pvq::PowerParam(1.25).reciprocal().value, WithinAbs(0.8, 1e-15));
  CHECK_THROWS_AS(pvq::PyramidPoint(std::vector<long long>{1, 2}, 4),
                  std::invalid_argument);
  CHECK_NOTHROW(pvq::PyramidPoint(std::vector<long long>{-1, 3}, 4));
}

TEST_CASE("codebook size known values") {
  CHECK(pvq::codebook_size(2, 1) == 4);
  CHECK(pvq::codebook_size(2, 2) == 8);
  CHECK(pvq::codebook_size(3, 1) == 6);
  CHECK(pvq::codebook_size(1, 5) == 2);
  CHECK(pvq::codebook_size(5, 0) == 1);
  CHECK(pvq::codebook_size(15, 4) == 34050);
}

TEST_CASE("codebook recurrence matches the closed form") {
  for (int l = 1; l <= 12; ++l)
    for (int k = 0; k <= 12; ++k)
      CHECK(pvq::codebook_size(l, k) == pvq::codebook_size_closed_form(l, k));
  // A pair big enough to stress the multiprecision path.
  CHECK(pvq::codebook_size(64, 64) == pvq::codebook_size_closed_form(64, 64));
}

TEST_CASE("bit cost is log2 of the codebook size") {
  CHECK_THAT(pvq::bit_cost(2, 1), WithinAbs(2.0, 1e-12));
  CHECK_THAT(pvq::bit_cost(15, 4), WithinAbs(std::log2(34050.0), 1e-12));
  CHECK(pvq::bit_cost(15, 4) > 15.04);
  CHECK(pvq::bit_cost(15, 4) < 15.07);
  // Sizes beyond double range still yield a finite, monotone bit count.
  const double big = pvq::bit_cost(900, 900);
  const double bigger = pvq::bit_cost(900, 901);
  CHECK(std::isfinite(big));
  CHECK(big > 1000.0);
  CHECK(bigger > big);
}
