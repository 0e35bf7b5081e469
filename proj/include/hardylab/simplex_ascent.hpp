#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "hardylab/norm_solver.hpp"

namespace hardylab {

/// Evaluates a positive, 1-homogeneous objective F at a point of the simplex and
/// writes c_k = a_k ∂_k F(a) / F(a) into `shares` (these sum to 1 by Euler's
/// identity). Returns F(a).
using SimplexObjective = std::function<double(std::span<const double> a, std::span<double> shares)>;

struct AscentOptions {
  double tol = 1e-12;
  double kkt_tol = 1e-10;
  std::size_t max_iter = 100000;
  MonotoneRestriction restriction = MonotoneRestriction::none;
};

struct AscentResult {
  std::vector<double> point;
  double value = 0.0;
  double stationarity = 0.0;  ///< max_k |c_k/a_k − 1|
  std::size_t iterations = 0;
  bool converged = false;
};

/// Mirror (log-coordinate) ascent a_k ← a_k (c_k/a_k)^η on the simplex with an
/// adaptive step η and a monotone acceptance test. Entries are clamped at 1e-300.
[[nodiscard]] AscentResult simplex_ascent(const SimplexObjective& objective, std::vector<double> start,
                                          const AscentOptions& opts);

/// Uniformly distributed point in the interior of the probability simplex.
[[nodiscard]] std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng);

/// Runs `simplex_ascent` from the uniform point and from `restarts − 1` random
/// points (restart r seeded with seed + r) and keeps the best value. With
/// `parallel` the restarts share a thread pool; the result is the same either way.
[[nodiscard]] AscentResult multistart_simplex_ascent(const SimplexObjective& objective, std::size_t n,
                                                     std::size_t restarts, std::uint64_t seed,
                                                     const AscentOptions& opts, bool parallel = false);

}  // namespace hardylab
