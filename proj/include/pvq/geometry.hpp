#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pvq/random.hpp"

namespace pvq {
namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

inline void require_finite(std::span<const double> v, const char* who) {
  for (double x : v)
    require(std::isfinite(x), std::string(who) + ": non-finite coordinate");
}

inline bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace detail

/// (sum_i |v_i|^s)^(1/s); for s = infinity, max_i |v_i|. Requires s >= 1.
inline double norm(std::span<const double> v, double s) {
  detail::require(!v.empty(), "norm: empty vector");
  detail::require_finite(v, "norm");
  detail::require(s >= 1.0, "norm: order must be >= 1 (or infinity)");
  if (std::isinf(s)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (s == 1.0) {
    double t = 0.0;
    for (double x : v) t += std::abs(x);
    return t;
  }
  if (s == 2.0) {
    double t = 0.0;
    for (double x : v) t += x * x;
    return std::sqrt(t);
  }
  double t = 0.0;
  for (double x : v) t += std::pow(std::abs(x), s);
  return std::pow(t, 1.0 / s);
}

/// v / ||v||_s: scales v onto the unit s-sphere. Direction and sign pattern
/// are preserved. The zero vector has no direction and is rejected.
inline std::vector<double> radial_project(std::span<const double> v, double s) {
  detail::require(!detail::is_zero(v), "radial_project: zero vector");
  const double n = norm(v, s);
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

/// Signed coordinate-wise power followed by radial projection:
/// w_i = |v_i|^p * sgn(v_i), then w / ||w||_s. Exponents above 1 concentrate
/// mass on the large coordinates, exponents below 1 spread it out, and p = 1
/// is exactly radial_project (same code path, so results are bitwise equal).
inline std::vector<double> power_project(std::span<const double> v, double p,
                                         double s) {
  detail::require(std::isfinite(p) && p > 0.0,
                  "power_project: exponent must be positive and finite");
  if (p == 1.0) return radial_project(v, s);
  detail::require(!detail::is_zero(v), "power_project: zero vector");
  detail::require_finite(v, "power_project");
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::copysign(std::pow(std::abs(v[i]), p), v[i]);
  detail::require_finite(w, "power_project: power overflow");
  const double n = norm(w, s);
  for (double& x : w) x /= n;
  return w;
}

/// A point of the unit Euclidean sphere in L >= 2 dimensions.
class UnitVector {
 public:
  /// Wraps coordinates that are already unit-norm (within 1e-12).
  explicit UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
    detail::require(coords_.size() >= 2, "UnitVector: dimension must be >= 2");
    detail::require_finite(coords_, "UnitVector");
    detail::require(std::abs(norm(coords_, 2.0) - 1.0) <= 1e-12,
                    "UnitVector: coordinates are not unit-norm");
  }

  /// Radially projects arbitrary nonzero coordinates onto the sphere.
  static UnitVector normalized(std::span<const double> v) {
    return UnitVector(radial_project(v, 2.0));
  }

  std::span<const double> coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  std::vector<double> coords_;
};

/// A point of the unit L1 sphere (coordinate magnitudes sum to 1).
class SimplexVector {
 public:
  explicit SimplexVector(std::vector<double> coords)
      : coords_(std::move(coords)) {
    detail::require(!coords_.empty(), "SimplexVector: empty");
    detail::require_finite(coords_, "SimplexVector");
    detail::require(std::abs(norm(coords_, 1.0) - 1.0) <= 1e-12,
                    "SimplexVector: magnitudes must sum to 1");
  }

  /// Projects arbitrary nonzero coordinates onto the L1 sphere.
  static SimplexVector normalized(std::span<const double> v) {
    return SimplexVector(radial_project(v, 1.0));
  }

  std::span<const double> coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  std::vector<double> coords_;
};

/// Input distributions for the Monte Carlo benchmarks.
enum class SampleLaw {
  kSphereUniform,  ///< uniform area measure on the sphere (normalized gaussians)
  kCubeDirection,  ///< direction of a uniform draw from the cube [-1,1]^L
};

/// Uniformly distributed point on the unit sphere: i.i.d. standard normals,
/// radially projected. Deterministic given the stream state.
inline UnitVector sample_sphere_uniform(int l, std::mt19937_64& rng) {
  detail::require(l >= 2, "sample_sphere_uniform: dimension must be >= 2");
  std::vector<double> v(static_cast<std::size_t>(l));
  for (;;) {
    std::size_t i = 0;
    for (; i + 1 < v.size(); i += 2) {
      const auto g = gaussian_pair(rng);
      v[i] = g[0];
      v[i + 1] = g[1];
    }
    if (i < v.size()) v[i] = gaussian_pair(rng)[0];
    if (!detail::is_zero(v)) return UnitVector::normalized(v);
  }
}

/// Direction of a point drawn uniformly from the solid cube [-1,1]^L. This is
/// not the uniform sphere law — mass concentrates toward the cube diagonals —
/// but it is the draw the reference benchmark values correspond to, so it is
/// the benchmark default.
inline UnitVector sample_cube_direction(int l, std::mt19937_64& rng) {
  detail::require(l >= 2, "sample_cube_direction: dimension must be >= 2");
  std::vector<double> v(static_cast<std::size_t>(l));
  for (;;) {
    for (double& x : v) x = 2.0 * uniform01(rng) - 1.0;
    if (!detail::is_zero(v)) return UnitVector::normalized(v);
  }
}

inline UnitVector sample_direction(int l, std::mt19937_64& rng, SampleLaw law) {
  return law == SampleLaw::kSphereUniform ? sample_sphere_uniform(l, rng)
                                          : sample_cube_direction(l, rng);
}

}  // namespace pvq
