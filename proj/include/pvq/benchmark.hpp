#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "pvq/format.hpp"
#include "pvq/pyramid.hpp"

namespace pvq {

/// One Monte Carlo measurement: pipeline MSE at a single (l, k, p).
struct SweepCell {
  int l = 0;
  int k = 0;
  double p = 0.0;
  double mse = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Outcome of optimizing the exponent over a grid for one (l, k) cell.
struct ImprovementReport {
  int l = 0;
  int k = 0;
  double best_p = 0.0;
  double mse_radial = 0.0;  // at p = 1
  double mse_best = 0.0;    // at best_p
  double pct = 0.0;         // 100 * (1 - mse_best / mse_radial)
  double db = 0.0;          // 10 * log10(mse_radial / mse_best)
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Decibel gain of mse relative to mse_ref: 10 * log10(mse_ref / mse).
inline double to_db(double mse_ref, double mse) {
  detail::require(mse_ref > 0.0 && mse > 0.0, "to_db: values must be positive");
  return 10.0 * std::log10(mse_ref / mse);
}

/// Average squared reconstruction error of quantize -> reconstruct at power p
/// over n_samples draws of the given law. Deterministic in seed.
inline SweepCell estimate_mse(int l, int k, double p, long long n_samples,
                              std::uint64_t seed,
                              SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(n_samples >= 1, "estimate_mse: need at least one sample");
  const QuantizerConfig cfg(l, k);
  const PowerParam param(p);
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const UnitVector x = sample_direction(l, rng, law);
    const UnitVector xr = reconstruct(quantize(x, cfg, param), param);
    double err = 0.0;
    for (int j = 0; j < l; ++j) {
      const double d = x.coords()[static_cast<std::size_t>(j)] -
                       xr.coords()[static_cast<std::size_t>(j)];
      err += d * d;
    }
    total += err;
  }
  return SweepCell{l, k, p, total / static_cast<double>(n_samples), n_samples,
                   seed};
}

/// The default exponent grid: 1.00 to 1.50 in steps of 0.01.
inline std::vector<double> default_p_grid() {
  std::vector<double> grid;
  grid.reserve(51);
  for (int i = 100; i <= 150; ++i) grid.push_back(i / 100.0);
  return grid;
}

/// Runs estimate_mse at every grid exponent with common random numbers (the
/// seed, hence the sample set, is identical across p) and reports the argmin;
/// ties resolve to the smaller p. The grid must contain 1.0, which makes the
/// radial baseline exact and pct >= 0 by construction.
inline ImprovementReport sweep_p(int l, int k, std::span<const double> p_grid,
                                 long long n_samples, std::uint64_t seed,
                                 SampleLaw law = SampleLaw::kCubeDirection) {
  detail::require(!p_grid.empty(), "sweep_p: empty grid");
  bool has_radial = false;
  for (double p : p_grid) has_radial = has_radial || p == 1.0;
  detail::require(has_radial, "sweep_p: grid must contain p = 1");

  double best_p = 0.0;
  double best = std::numeric_limits<double>::infinity();
  double radial = 0.0;
  for (double p : p_grid) {
    const double mse = estimate_mse(l, k, p, n_samples, seed, law).mse;
    if (p == 1.0) radial = mse;
    if (mse < best || (mse == best && p < best_p)) {
      best = mse;
      best_p = p;
    }
  }
  const double pct = 100.0 * (1.0 - best / radial);
  return ImprovementReport{l,   k,  best_p,    radial, best,
                           pct, to_db(radial, best), n_samples, seed};
}

/// Full (l, k) grid of sweep_p reports, ordered by l then k. Each cell runs
/// on its own cell_seed-derived stream, so the table is reproducible and
/// identical whether cells are computed serially or on `threads` workers.
inline std::vector<ImprovementReport> improvement_table(
    int l_min, int l_max, int k_min, int k_max,
    std::span<const double> p_grid, long long n_samples,
    std::uint64_t master_seed, SampleLaw law = SampleLaw::kCubeDirection,
    int threads = 1) {
  detail::require(2 <= l_min && l_min <= l_max, "improvement_table: bad l range");
  detail::require(1 <= k_min && k_min <= k_max, "improvement_table: bad k range");

  struct Cell {
    int l;
    int k;
  };
  std::vector<Cell> cells;
  for (int l = l_min; l <= l_max; ++l)
    for (int k = k_min; k <= k_max; ++k) cells.push_back({l, k});

  std::vector<ImprovementReport> out(cells.size());
  auto run_cell = [&](std::size_t i) {
    out[i] = sweep_p(cells[i].l, cells[i].k, p_grid, n_samples,
                     cell_seed(master_seed, cells[i].l, cells[i].k), law);
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t worker_count =
        std::min(static_cast<std::size_t>(threads), cells.size());
    pool.reserve(worker_count);
    for (std::size_t t = 0; t < worker_count; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1))
          run_cell(i);
      });
    for (auto& worker : pool) worker.join();
  }
  return out;
}

/// Benchmark CSV, one row per cell:
/// l,k,best_p,mse_radial,mse_best,pct,db,n_samples,seed
inline void write_improvement_csv(std::ostream& os,
                                  std::span<const ImprovementReport> rows) {
  os << "l,k,best_p,mse_radial,mse_best,pct,db,n_samples,seed\n";
  for (const ImprovementReport& r : rows)
    os << r.l << ',' << r.k << ',' << format_g6(r.best_p) << ','
       << format_g6(r.mse_radial) << ',' << format_g6(r.mse_best) << ','
       << format_g6(r.pct) << ',' << format_g6(r.db) << ',' << r.n_samples
       << ',' << r.seed << '\n';
}

}  // namespace pvq
