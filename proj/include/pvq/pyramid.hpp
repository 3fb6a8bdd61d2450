#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pvq/geometry.hpp"

namespace pvq {

/// Exact integer type for codebook cardinalities (they outgrow 64 bits).
using BigInt = boost::multiprecision::cpp_int;

/// Codebook geometry: dimension l and pyramid radius k.
struct QuantizerConfig {
  int l;
  int k;
  QuantizerConfig(int l_, int k_) : l(l_), k(k_) {
    detail::require(l >= 2, "QuantizerConfig: l must be >= 2");
    detail::require(k >= 1, "QuantizerConfig: k must be >= 1");
  }
};

/// Deformation exponent of the power projection.
struct PowerParam {
  double value;
  explicit PowerParam(double v) : value(v) {
    detail::require(std::isfinite(v) && v > 0.0,
                    "PowerParam: must be positive and finite");
  }
  PowerParam reciprocal() const { return PowerParam(1.0 / value); }
};

/// Integer lattice point with |ints| summing to exactly k, so that ints/k
/// lies on the unit L1 sphere.
struct PyramidPoint {
  std::vector<long long> ints;
  long long k;

  PyramidPoint(std::vector<long long> ints_, long long k_)
      : ints(std::move(ints_)), k(k_) {
    detail::require(k >= 1, "PyramidPoint: k must be >= 1");
    detail::require(!ints.empty(), "PyramidPoint: empty");
    long long sum = 0;
    for (long long v : ints) sum += v < 0 ? -v : v;
    detail::require(sum == k, "PyramidPoint: |ints| must sum to k");
  }

  bool operator==(const PyramidPoint& other) const = default;
};

namespace detail {

/// Round to nearest integer, exact halves to the even neighbor. Hand-rolled
/// so the result does not depend on the floating-point rounding mode the way
/// std::rint does.
inline double round_half_even(double x) {
  const double f = std::floor(x);
  const double r = x - f;
  if (r > 0.5) return f + 1.0;
  if (r < 0.5) return f;
  return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

/// counts[i][j] = N(i, j), the number of integer points in i dimensions whose
/// magnitudes sum to j, via the recurrence
///   N(L,K) = N(L-1,K) + N(L,K-1) + N(L-1,K-1)
/// (first coordinate zero; |first| >= 1, peel one unit off it; first exactly
/// +-1 about to reach zero — the three cases partition the point set) with
/// N(L,0) = 1, N(0,0) = 1, N(0,K) = 0 for K >= 1.
inline std::vector<std::vector<BigInt>> codebook_table(int l, int k) {
  std::vector<std::vector<BigInt>> n(static_cast<std::size_t>(l) + 1,
                                     std::vector<BigInt>(static_cast<std::size_t>(k) + 1));
  n[0][0] = 1;
  for (int j = 1; j <= k; ++j) n[0][static_cast<std::size_t>(j)] = 0;
  for (int i = 1; i <= l; ++i) {
    auto& row = n[static_cast<std::size_t>(i)];
    const auto& prev = n[static_cast<std::size_t>(i) - 1];
    row[0] = 1;
    for (int j = 1; j <= k; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      row[ju] = prev[ju] + row[ju - 1] + prev[ju - 1];
    }
  }
  return n;
}

}  // namespace detail

/// Nearest pyramid point for nonnegative simplex coordinates: round each
/// k*va_i half-to-even, then repair the total back to k by bumping the
/// entries with the smallest rounding residual (stable order, so ties go to
/// the lowest index). When the total overshoots, the residual of each
/// positive entry is shifted down by 1 while zero entries keep theirs, which
/// ranks zeros last — they are never decremented (the rounding bounds
/// guarantee enough positive candidates).
inline std::vector<long long> quantize_abs(std::span<const double> va,
                                           long long k) {
  detail::require(k >= 1, "quantize_abs: k must be >= 1");
  detail::require(!va.empty(), "quantize_abs: empty input");
  detail::require_finite(va, "quantize_abs");
  double total = 0.0;
  for (double x : va) {
    detail::require(x >= 0.0, "quantize_abs: negative coordinate");
    total += x;
  }
  detail::require(std::abs(total - 1.0) <= 1e-12,
                  "quantize_abs: coordinates must sum to 1");

  const std::size_t n = va.size();
  std::vector<double> vk(n);
  std::vector<long long> vr(n);
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    vk[i] = static_cast<double>(k) * va[i];
    vr[i] = static_cast<long long>(detail::round_half_even(vk[i]));
    sum += vr[i];
  }
  if (sum == k) return vr;

  std::vector<double> residual(n);
  if (sum < k) {
    for (std::size_t i = 0; i < n; ++i)
      residual[i] = static_cast<double>(vr[i]) - vk[i];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      residual[i] =
          vk[i] - static_cast<double>(vr[i]) - (vr[i] > 0 ? 1.0 : 0.0);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return residual[a] < residual[b];
  });
  const long long defect = k - sum;
  const long long count = defect > 0 ? defect : -defect;
  const long long step = defect > 0 ? 1 : -1;
  for (long long i = 0; i < count; ++i)
    vr[order[static_cast<std::size_t>(i)]] += step;
  return vr;
}

inline std::vector<long long> quantize_abs(const SimplexVector& va,
                                           long long k) {
  return quantize_abs(va.coords(), k);
}

/// Encoder step: power-project x onto the simplex with exponent p, quantize
/// the magnitudes, reattach the input signs (an input coordinate of exactly 0
/// gets +). p = 1 is the plain radial pipeline.
inline PyramidPoint quantize(const UnitVector& x, const QuantizerConfig& cfg,
                             PowerParam p) {
  detail::require(x.dim() == cfg.l, "quantize: dimension mismatch");
  const std::vector<double> y = power_project(x.coords(), p.value, 1.0);
  std::vector<double> magnitudes(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) magnitudes[i] = std::abs(y[i]);
  std::vector<long long> ints = quantize_abs(magnitudes, cfg.k);
  for (std::size_t i = 0; i < ints.size(); ++i)
    if (x.coords()[i] < 0.0) ints[i] = -ints[i];
  return PyramidPoint(std::move(ints), cfg.k);
}

/// Decoder step: back-project the integer point onto the Euclidean sphere
/// with the reciprocal exponent, undoing the encoder's deformation (the 1/k
/// scale cancels under projection). Same p as passed to quantize.
inline UnitVector reconstruct(const PyramidPoint& y, PowerParam p) {
  std::vector<double> v(y.ints.begin(), y.ints.end());
  return UnitVector(power_project(v, p.reciprocal().value, 2.0));
}

/// Number of pyramid points |S(L,K)|, exact.
inline BigInt codebook_size(int l, int k) {
  detail::require(l >= 1, "codebook_size: l must be >= 1");
  detail::require(k >= 0, "codebook_size: k must be >= 0");
  return detail::codebook_table(l, k)[static_cast<std::size_t>(l)]
                                     [static_cast<std::size_t>(k)];
}

/// |S(L,K)| again, via the independent closed form
///   sum_i 2^i * C(L,i) * C(K-1,i-1)
/// over the number i of nonzero coordinates (which coordinates, their signs,
/// and a composition of K into i positive parts). Cross-check for the
/// recurrence.
inline BigInt codebook_size_closed_form(int l, int k) {
  detail::require(l >= 1, "codebook_size_closed_form: l must be >= 1");
  detail::require(k >= 0, "codebook_size_closed_form: k must be >= 0");
  if (k == 0) return 1;
  BigInt total = 0;
  BigInt choose_l = l;  // C(l, i) for i = 1
  BigInt choose_k = 1;  // C(k-1, i-1) for i = 1
  const int top = std::min(l, k);
  for (int i = 1; i <= top; ++i) {
    if (i > 1) {
      choose_l = choose_l * (l - i + 1) / i;
      choose_k = choose_k * (k - i + 1) / (i - 1);
    }
    total += (BigInt(1) << i) * choose_l * choose_k;
  }
  return total;
}

/// log2 |S(L,K)| in (fractional) bits; nothing is packed to whole bits.
inline double bit_cost(int l, int k) {
  const BigInt n = codebook_size(l, k);
  const unsigned bits = boost::multiprecision::msb(n);  // n >= 1 always
  if (bits <= 1000) return std::log2(n.convert_to<double>());
  const unsigned shift = bits - 52;
  return std::log2((n >> shift).convert_to<double>()) +
         static_cast<double>(shift);
}

}  // namespace pvq
