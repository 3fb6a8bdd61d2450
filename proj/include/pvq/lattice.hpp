#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "pvq/format.hpp"
#include "pvq/geometry.hpp"

namespace pvq {

/// Triangular lattice of the positive simplex slice: vertices are all
/// nonnegative integer triples summing to k (scaled by 1/k they tile S1+);
/// edges join triples differing by +1 in one coordinate and -1 in another.
struct LatticeGraph {
  int k = 0;
  std::vector<std::array<int, 3>> vertices;
  std::vector<std::array<int, 2>> edges;  // index pairs into vertices
};

inline LatticeGraph build_lattice(int k) {
  detail::require(k >= 1, "build_lattice: k must be >= 1");
  LatticeGraph graph;
  graph.k = k;
  // Vertices ordered by (a, b); index(a, b) recovers the position in O(1).
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b + a <= k; ++b)
      graph.vertices.push_back({a, b, k - a - b});
  const auto index = [k](int a, int b) {
    return static_cast<std::size_t>(a * (k + 1) - a * (a - 1) / 2 + b);
  };
  // Each undirected edge appears once, added from the endpoint where the
  // earlier coordinate is smaller (the three neighbor directions are
  // (+1,-1,0), (+1,0,-1) and (0,+1,-1)).
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; b + a <= k; ++b) {
      const int c = k - a - b;
      const auto here = static_cast<int>(index(a, b));
      if (b >= 1)
        graph.edges.push_back({here, static_cast<int>(index(a + 1, b - 1))});
      if (c >= 1)
        graph.edges.push_back({here, static_cast<int>(index(a + 1, b))});
      if (c >= 1)
        graph.edges.push_back({here, static_cast<int>(index(a, b + 1))});
    }
  }
  return graph;
}

/// One point of the sphere octant S2+ per lattice vertex.
struct PointConfiguration {
  std::vector<std::array<double, 3>> points;
};

/// Radial projection of the lattice vertices onto the sphere: the standard,
/// undeformed starting configuration.
inline PointConfiguration radial_configuration(const LatticeGraph& graph) {
  PointConfiguration config;
  config.points.reserve(graph.vertices.size());
  for (const auto& v : graph.vertices) {
    const double n = std::sqrt(static_cast<double>(v[0]) * v[0] +
                               static_cast<double>(v[1]) * v[1] +
                               static_cast<double>(v[2]) * v[2]);
    config.points.push_back({v[0] / n, v[1] / n, v[2] / n});
  }
  return config;
}

namespace detail {

inline void require_configuration(const PointConfiguration& config,
                                  const LatticeGraph& graph) {
  require(config.points.size() == graph.vertices.size(),
          "point configuration does not match the lattice");
  for (const auto& pt : config.points) {
    double nsq = 0.0;
    for (double c : pt) {
      require(std::isfinite(c) && c >= 0.0,
              "point configuration must lie in the nonnegative octant");
      nsq += c * c;
    }
    require(std::abs(std::sqrt(nsq) - 1.0) <= 1e-9,
            "point configuration must lie on the unit sphere");
  }
}

}  // namespace detail

/// Sum over edges of ||difference of endpoints||^4 — squared distance times a
/// squared (area-like) weight; the optimization target for point placement.
inline double edge_objective(const PointConfiguration& config,
                             const LatticeGraph& graph) {
  detail::require(config.points.size() == graph.vertices.size(),
                  "edge_objective: configuration does not match the lattice");
  double total = 0.0;
  for (const auto& e : graph.edges) {
    const auto& a = config.points[static_cast<std::size_t>(e[0])];
    const auto& b = config.points[static_cast<std::size_t>(e[1])];
    double dsq = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
      dsq += d * d;
    }
    total += dsq * dsq;
  }
  return total;
}

/// Analytic gradient of edge_objective: for each edge (a, b) and endpoint a,
/// d/da ||a - b||^4 = 4 ||a - b||^2 (a - b), accumulated per vertex.
inline std::vector<std::array<double, 3>> edge_objective_gradient(
    const PointConfiguration& config, const LatticeGraph& graph) {
  detail::require(config.points.size() == graph.vertices.size(),
                  "edge_objective_gradient: configuration mismatch");
  std::vector<std::array<double, 3>> grad(config.points.size(),
                                          {0.0, 0.0, 0.0});
  for (const auto& e : graph.edges) {
    const auto ia = static_cast<std::size_t>(e[0]);
    const auto ib = static_cast<std::size_t>(e[1]);
    const auto& a = config.points[ia];
    const auto& b = config.points[ib];
    double dsq = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
      dsq += d * d;
    }
    for (int i = 0; i < 3; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const double g = 4.0 * dsq * (a[iu] - b[iu]);
      grad[ia][iu] += g;
      grad[ib][iu] -= g;
    }
  }
  return grad;
}

/// Outcome of optimize(): the final points, the objective value after the
/// initial configuration and every accepted step, and the step size the
/// search ended with.
struct OptimizeResult {
  PointConfiguration points;
  std::vector<double> trace;
  double final_step_size = 0.0;
};

/// Projected gradient descent on the sphere octant: step against the
/// gradient, clamp negative coordinates to zero, renormalize every point back
/// to the unit sphere. The three corner vertices (k,0,0)/(0,k,0)/(0,0,k) stay
/// fixed — they already lie on the sphere and anchor the configuration. A
/// step that would increase the objective is retried with half the step size
/// (the reduction persists), giving a nonincreasing objective trace; the
/// search stops after max_steps accepted steps, 30 consecutive halvings, or a
/// relative improvement below 1e-10.
inline OptimizeResult optimize(const LatticeGraph& graph,
                               const PointConfiguration& initial,
                               int max_steps = 10000, double step_size = 0.5) {
  detail::require(max_steps >= 0, "optimize: max_steps must be >= 0");
  detail::require(step_size > 0.0 && std::isfinite(step_size),
                  "optimize: step_size must be positive");
  detail::require_configuration(initial, graph);

  std::vector<bool> corner(graph.vertices.size(), false);
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const auto& v = graph.vertices[i];
    corner[i] = (v[0] == graph.k) || (v[1] == graph.k) || (v[2] == graph.k);
  }

  OptimizeResult result;
  result.points = initial;
  double objective = edge_objective(result.points, graph);
  result.trace.push_back(objective);

  for (int step = 0; step < max_steps; ++step) {
    const auto grad = edge_objective_gradient(result.points, graph);
    for (const auto& g : grad)
      for (double c : g)
        if (!std::isfinite(c))
          throw std::runtime_error("optimize: non-finite gradient");

    bool accepted = false;
    for (int halving = 0; halving <= 30 && !accepted; ++halving) {
      PointConfiguration candidate = result.points;
      for (std::size_t i = 0; i < candidate.points.size(); ++i) {
        if (corner[i]) continue;
        auto& pt = candidate.points[i];
        double nsq = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
          pt[c] = std::max(0.0, pt[c] - step_size * grad[i][c]);
          nsq += pt[c] * pt[c];
        }
        if (nsq == 0.0) {  // degenerate step; keep the previous point
          pt = result.points.points[i];
          continue;
        }
        const double n = std::sqrt(nsq);
        for (double& c : pt) c /= n;
      }
      const double candidate_objective = edge_objective(candidate, graph);
      if (candidate_objective <= objective) {
        const double improvement = objective - candidate_objective;
        result.points = std::move(candidate);
        objective = candidate_objective;
        result.trace.push_back(objective);
        accepted = true;
        if (improvement <= 1e-10 * std::max(objective, 1e-300)) {
          result.final_step_size = step_size;
          return result;
        }
      } else {
        step_size /= 2.0;
      }
    }
    if (!accepted) break;  // halvings exhausted
  }
  result.final_step_size = step_size;
  return result;
}

/// Point-set CSV for external plotting: vertex_id,a,b,c per row.
inline void write_points_csv(std::ostream& os,
                             const PointConfiguration& config) {
  os << "vertex_id,a,b,c\n";
  for (std::size_t i = 0; i < config.points.size(); ++i)
    os << i << ',' << format_g6(config.points[i][0]) << ','
       << format_g6(config.points[i][1]) << ','
       << format_g6(config.points[i][2]) << '\n';
}

}  // namespace pvq
