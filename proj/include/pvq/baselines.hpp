#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pvq/benchmark.hpp"

namespace pvq {

// ---------------------------------------------------------------------------
// Sign quantizer: one bit per coordinate.
// ---------------------------------------------------------------------------

/// L sign bits; reconstruction is the +-1 pattern scaled by a gain.
struct SignCode {
  std::vector<bool> negative;

  int l() const { return static_cast<int>(negative.size()); }
  double cost_bits() const { return static_cast<double>(negative.size()); }
};

inline SignCode sign_quantize(const UnitVector& x) {
  SignCode code;
  code.negative.resize(static_cast<std::size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i)
    code.negative[static_cast<std::size_t>(i)] =
        x.coords()[static_cast<std::size_t>(i)] < 0.0;
  return code;
}

/// Codeword at an explicit gain: coordinates +-gain. Only gain = 1/sqrt(L)
/// lands on the unit sphere; a fitted gain trades that for lower MSE.
inline std::vector<double> sign_reconstruct(const SignCode& code, double gain) {
  detail::require(gain > 0.0 && std::isfinite(gain),
                  "sign_reconstruct: gain must be positive");
  std::vector<double> out(code.negative.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = code.negative[i] ? -gain : gain;
  return out;
}

/// Default gain 1/sqrt(L): the unit-norm codeword.
inline UnitVector sign_reconstruct(const SignCode& code) {
  return UnitVector(
      sign_reconstruct(code, 1.0 / std::sqrt(static_cast<double>(code.l()))));
}

/// Gain minimizing the sign quantizer's MSE under the given law, by Monte
/// Carlo: the error 1 - 2g E<x, sgn x> + g^2 L is quadratic in g with
/// minimum at E[sum_i |x_i|] / L.
inline double fit_sign_gain(int l, long long n_samples, std::uint64_t seed,
                            SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(n_samples >= 1, "fit_sign_gain: need at least one sample");
  std::mt19937_64 rng(seed);
  double mean_abs_sum = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(l, rng, law);
    double abs_sum = 0.0;
    for (double c : x.coords()) abs_sum += std::abs(c);
    mean_abs_sum += abs_sum;
  }
  mean_abs_sum /= static_cast<double>(n_samples);
  return mean_abs_sum / static_cast<double>(l);
}

/// Monte Carlo MSE of the sign quantizer at a fixed gain.
inline double sign_mse(int l, double gain, long long n_samples,
                       std::uint64_t seed,
                       SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(n_samples >= 1, "sign_mse: need at least one sample");
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(l, rng, law);
    const std::vector<double> c = sign_reconstruct(sign_quantize(x), gain);
    double err = 0.0;
    for (int j = 0; j < l; ++j) {
      const double d = x.coords()[static_cast<std::size_t>(j)] -
                       c[static_cast<std::size_t>(j)];
      err += d * d;
    }
    total += err;
  }
  return total / static_cast<double>(n_samples);
}

// ---------------------------------------------------------------------------
// Sign+max quantizer: sign bits plus the index of the largest magnitude.
// ---------------------------------------------------------------------------

/// L sign bits and the argmax coordinate; costs L + log2(L) bits.
struct SignMaxCode {
  std::vector<bool> negative;
  int argmax = 0;

  int l() const { return static_cast<int>(negative.size()); }
  double cost_bits() const {
    return static_cast<double>(negative.size()) +
           std::log2(static_cast<double>(negative.size()));
  }
};

/// Two-level reconstruction magnitudes: w_max at the argmax slot, w_rest
/// elsewhere. Valid profiles are unit-norm: w_max^2 + (L-1) w_rest^2 = 1.
struct SignMaxProfile {
  double w_max = 0.0;
  double w_rest = 0.0;
};

inline SignMaxCode sign_max_quantize(const UnitVector& x) {
  SignMaxCode code;
  code.negative.resize(static_cast<std::size_t>(x.dim()));
  double best = -1.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double c = x.coords()[static_cast<std::size_t>(i)];
    code.negative[static_cast<std::size_t>(i)] = c < 0.0;
    if (std::abs(c) > best) {  // strict >: ties keep the lowest index
      best = std::abs(c);
      code.argmax = i;
    }
  }
  return code;
}

inline UnitVector sign_max_reconstruct(const SignMaxCode& code,
                                       const SignMaxProfile& profile) {
  std::vector<double> out(code.negative.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double w =
        static_cast<int>(i) == code.argmax ? profile.w_max : profile.w_rest;
    out[i] = code.negative[i] ? -w : w;
  }
  return UnitVector::normalized(out);
}

/// Fits the two-level profile by moment matching: over unit-norm profiles the
/// MSE is 2 - 2(w_max E[max_i |x_i|] + w_rest E[rest]), so the optimum is
/// proportional to (E[max|x|], E[rest]/(L-1)), normalized back to unit norm.
inline SignMaxProfile fit_sign_max_profile(
    int l, long long n_samples, std::uint64_t seed,
    SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(l >= 2, "fit_sign_max_profile: l must be >= 2");
  detail::require(n_samples >= 1, "fit_sign_max_profile: need a sample");
  std::mt19937_64 rng(seed);
  double mean_max = 0.0;
  double mean_rest = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(l, rng, law);
    double max_abs = 0.0;
    double abs_sum = 0.0;
    for (double c : x.coords()) {
      abs_sum += std::abs(c);
      max_abs = std::max(max_abs, std::abs(c));
    }
    mean_max += max_abs;
    mean_rest += abs_sum - max_abs;
  }
  mean_max /= static_cast<double>(n_samples);
  mean_rest /= static_cast<double>(n_samples) * static_cast<double>(l - 1);
  const double scale =
      std::sqrt(mean_max * mean_max +
                static_cast<double>(l - 1) * mean_rest * mean_rest);
  return SignMaxProfile{mean_max / scale, mean_rest / scale};
}

/// Default profiles for l = 2..32, produced by the pvq-fit-baselines tool:
///   pvq-fit-baselines --l-min 2 --l-max 32 --samples 200000 --seed 12345
/// (cube sampling law). Dimensions beyond the table fall back to fitting on
/// the fly with those same parameters.
inline SignMaxProfile default_sign_max_profile(int l) {
  detail::require(l >= 2, "default_sign_max_profile: l must be >= 2");
  static constexpr double kProfiles[][2] = {
      {0.905016939001, 0.425375528354},  // l=2  mse 0.0521
      {0.830233065445, 0.394152925298},  // l=3  mse 0.0887
      {0.770211005020, 0.368227741009},  // l=4  mse 0.1153
      {0.720333976567, 0.346813697179},  // l=5  mse 0.1352
      {0.678961622547, 0.328332488526},  // l=6  mse 0.1507
      {0.643709731716, 0.312420064788},  // l=7  mse 0.1632
      {0.613478895770, 0.298482745241},  // l=8  mse 0.1734
      {0.586846941758, 0.286271433029},  // l=9  mse 0.1818
      {0.563458567092, 0.275381441150},  // l=10  mse 0.1889
      {0.542570536819, 0.265634563372},  // l=11  mse 0.1948
      {0.523748939925, 0.256849274501},  // l=12  mse 0.2000
      {0.506634445640, 0.248884434107},  // l=13  mse 0.2044
      {0.491354339655, 0.241560776379},  // l=14  mse 0.2085
      {0.477278161267, 0.234856423736},  // l=15  mse 0.2120
      {0.464268110437, 0.228685391114},  // l=16  mse 0.2150
      {0.452240025688, 0.222974067882},  // l=17  mse 0.2178
      {0.441119582795, 0.217663192824},  // l=18  mse 0.2202
      {0.430772989971, 0.212711937594},  // l=19  mse 0.2225
      {0.421147525957, 0.208078269861},  // l=20  mse 0.2246
      {0.412158386203, 0.203730884340},  // l=21  mse 0.2265
      {0.403713201646, 0.199644404214},  // l=22  mse 0.2282
      {0.395729820523, 0.195796497920},  // l=23  mse 0.2298
      {0.388224446465, 0.192159555439},  // l=24  mse 0.2313
      {0.381066764264, 0.188722472736},  // l=25  mse 0.2326
      {0.374349438857, 0.185457542055},  // l=26  mse 0.2338
      {0.367937489758, 0.182358691724},  // l=27  mse 0.2350
      {0.361895683327, 0.179405552826},  // l=28  mse 0.2361
      {0.356104899992, 0.176593692271},  // l=29  mse 0.2371
      {0.350554431982, 0.173911550073},  // l=30  mse 0.2380
      {0.345322326582, 0.171342978726},  // l=31  mse 0.2389
      {0.340331211160, 0.168883875614},  // l=32  mse 0.2398
  };
  constexpr int kFirst = 2;
  constexpr int kCount = static_cast<int>(sizeof(kProfiles) / sizeof(kProfiles[0]));
  if (l >= kFirst && l < kFirst + kCount && kProfiles[l - kFirst][0] > 0.0)
    return SignMaxProfile{kProfiles[l - kFirst][0], kProfiles[l - kFirst][1]};
  return fit_sign_max_profile(l, 200000, 12345, SampleLaw::kCubeDirection);
}

/// Monte Carlo MSE of the sign+max quantizer with the given profile.
inline double sign_max_mse(int l, const SignMaxProfile& profile,
                           long long n_samples, std::uint64_t seed,
                           SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(n_samples >= 1, "sign_max_mse: need at least one sample");
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(l, rng, law);
    const UnitVector c = sign_max_reconstruct(sign_max_quantize(x), profile);
    double err = 0.0;
    for (int j = 0; j < l; ++j) {
      const double d = x.coords()[static_cast<std::size_t>(j)] -
                       c.coords()[static_cast<std::size_t>(j)];
      err += d * d;
    }
    total += err;
  }
  return total / static_cast<double>(n_samples);
}

// ---------------------------------------------------------------------------
// The L = 2 analytic map: angle-uniform codebooks.
// ---------------------------------------------------------------------------

/// Maps the positive simplex onto the positive quarter-circle with an
/// angle-uniform image: (y1, y2) -> (sin(y1 pi/2), sin(y2 pi/2)). Lands
/// exactly on the circle since y1 + y2 = 1 makes the sines cofunctions.
inline std::array<double, 2> trig_map(const std::array<double, 2>& y) {
  detail::require(y[0] >= 0.0 && y[1] >= 0.0,
                  "trig_map: coordinates must be nonnegative");
  detail::require(std::abs(y[0] + y[1] - 1.0) <= 1e-9,
                  "trig_map: coordinates must sum to 1");
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  return {std::sin(y[0] * kHalfPi), std::sin(y[1] * kHalfPi)};
}

/// Inverse of trig_map on the positive quarter-circle (arcsin per coordinate,
/// then renormalized so the result sums to exactly 1).
inline std::array<double, 2> trig_map_inverse(const std::array<double, 2>& x) {
  detail::require(x[0] >= 0.0 && x[1] >= 0.0,
                  "trig_map_inverse: coordinates must be nonnegative");
  detail::require(std::abs(x[0] * x[0] + x[1] * x[1] - 1.0) <= 1e-9,
                  "trig_map_inverse: point must lie on the unit circle");
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double y0 = std::asin(std::min(x[0], 1.0)) / kHalfPi;
  const double y1 = std::asin(std::min(x[1], 1.0)) / kHalfPi;
  const double sum = y0 + y1;
  return {y0 / sum, y1 / sum};
}

/// Monte Carlo MSE at L = 2 of the angle-uniform codebook: the PVQ pipeline
/// with trig_map_inverse / trig_map in place of the projections. Because the
/// grid images are equally spaced in angle, this is the analytic optimum a
/// deformed projection can approach at L = 2.
inline double trig_codebook_mse(int k, long long n_samples, std::uint64_t seed,
                                SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(k >= 1, "trig_codebook_mse: k must be >= 1");
  detail::require(n_samples >= 1, "trig_codebook_mse: need a sample");
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(2, rng, law);
    const std::array<double, 2> ax{std::abs(x.coords()[0]),
                                   std::abs(x.coords()[1])};
    const std::array<double, 2> y = trig_map_inverse(ax);
    const std::vector<long long> q = quantize_abs(std::span(y.data(), 2), k);
    const std::array<double, 2> grid{static_cast<double>(q[0]) / k,
                                     static_cast<double>(q[1]) / k};
    std::array<double, 2> c = trig_map(grid);
    if (x.coords()[0] < 0.0) c[0] = -c[0];
    if (x.coords()[1] < 0.0) c[1] = -c[1];
    const double d0 = x.coords()[0] - c[0];
    const double d1 = x.coords()[1] - c[1];
    total += d0 * d0 + d1 * d1;
  }
  return total / static_cast<double>(n_samples);
}

// ---------------------------------------------------------------------------
// Comparison table.
// ---------------------------------------------------------------------------

/// One row of the baseline comparison CSV.
struct BaselineRow {
  std::string quantizer_name;
  int l = 0;
  std::string params;
  double cost_bits = 0.0;
  double mse = 0.0;
  double db_vs_sign = 0.0;  // 10*log10(mse_sign / mse); positive = better
};

/// Side-by-side Monte Carlo comparison at dimension l: the sign quantizer
/// (unit gain and fitted gain), sign+max, and PVQ at the given radii with
/// p = 1. All quantizers consume the identical sample stream (common random
/// numbers), so differences are not sampling noise. db_vs_sign is relative
/// to the unit-gain sign row.
inline std::vector<BaselineRow> baseline_comparison(
    int l, std::span<const int> pvq_ks, long long n_samples,
    std::uint64_t seed, SampleLaw law = SampleLaw::kCubeDirection) {
  std::vector<BaselineRow> rows;

  const double unit_gain = 1.0 / std::sqrt(static_cast<double>(l));
  const double mse_sign = sign_mse(l, unit_gain, n_samples, seed, law);
  rows.push_back({"sign", l, "g=" + format_g6(unit_gain),
                  static_cast<double>(l), mse_sign, 0.0});

  const double fitted_gain = fit_sign_gain(l, n_samples, seed, law);
  rows.push_back({"sign_opt_gain", l, "g=" + format_g6(fitted_gain),
                  static_cast<double>(l),
                  sign_mse(l, fitted_gain, n_samples, seed, law), 0.0});

  const SignMaxProfile profile = default_sign_max_profile(l);
  rows.push_back({"sign_max", l,
                  "wmax=" + format_g6(profile.w_max) +
                      " wrest=" + format_g6(profile.w_rest),
                  static_cast<double>(l) + std::log2(static_cast<double>(l)),
                  sign_max_mse(l, profile, n_samples, seed, law), 0.0});

  for (int k : pvq_ks)
    rows.push_back({"pvq", l, "k=" + std::to_string(k) + " p=1",
                    bit_cost(l, k),
                    estimate_mse(l, k, 1.0, n_samples, seed, law).mse, 0.0});

  for (BaselineRow& row : rows) row.db_vs_sign = to_db(mse_sign, row.mse);
  return rows;
}

/// Baseline CSV: quantizer_name,l,params,cost_bits,mse,db_vs_sign
inline void write_baseline_csv(std::ostream& os,
                               std::span<const BaselineRow> rows) {
  os << "quantizer_name,l,params,cost_bits,mse,db_vs_sign\n";
  for (const BaselineRow& r : rows)
    os << r.quantizer_name << ',' << r.l << ',' << r.params << ','
       << format_g6(r.cost_bits) << ',' << format_g6(r.mse) << ','
       << format_g6(r.db_vs_sign) << '\n';
}

}  // namespace pvq
