#include "hardylab/simplex_ascent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace hardylab {
namespace {

constexpr double kFloor = 1e-300;
constexpr double kMaxStep = 8.0;
constexpr double kMinStep = 1e-12;

void normalize_sum(std::vector<double>& a) {
  double total = 0.0;
  for (double& v : a) {
    v = std::max(v, kFloor);
    total += v;
  }
  for (double& v : a) v = std::max(v / total, kFloor);
}

double stationarity(std::span<const double> a, std::span<const double> shares) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(shares[k] / a[k] - 1.0));
  return worst;
}

}  // namespace

std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> a(n);
  for (double& v : a) v = exp1(rng) + 1e-12;
  normalize_sum(a);
  return a;
}

AscentResult simplex_ascent(const SimplexObjective& objective, std::vector<double> start,
                            const AscentOptions& opts) {
  const std::size_t n = start.size();
  AscentResult res;
  if (n == 0) return res;
  normalize_sum(start);
  if (opts.restriction != MonotoneRestriction::none) {
    start = monotone_projection(start, opts.restriction);
    normalize_sum(start);
  }

  std::vector<double> shares(n), trial_shares(n), trial(n);
  double value = objective(start, shares);
  res.point = std::move(start);
  double step = 1.0;
  std::size_t it = 0;
  for (; it < opts.max_iter; ++it) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double la = std::log(res.point[k]);
      trial[k] = la + step * (std::log(std::max(shares[k], kFloor)) - la);
      top = std::max(top, trial[k]);
    }
    for (double& v : trial) v = std::exp(v - top);
    normalize_sum(trial);
    if (opts.restriction != MonotoneRestriction::none) {
      trial = monotone_projection(trial, opts.restriction);
      normalize_sum(trial);
    }

    const double next = objective(trial, trial_shares);
    // Near the maximum the value only moves at rounding level; such a step
    // counts as progress only if it lowers the stationarity residual.
    const bool improved = next > value * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) ||
                          (next >= value * (1.0 - 4.0 * std::numeric_limits<double>::epsilon()) &&
                           stationarity(trial, trial_shares) < stationarity(res.point, shares));
    if (!improved) {
      step *= 0.5;
      if (step < kMinStep) break;
      continue;
    }
    const double change = std::abs(next - value) / next;
    res.point.swap(trial);
    shares.swap(trial_shares);
    value = next;
    step = std::min(step * 1.5, kMaxStep);

    const bool flat = change <= opts.tol;
    if (flat && (opts.restriction != MonotoneRestriction::none || stationarity(res.point, shares) <= opts.kkt_tol)) {
      res.converged = true;
      ++it;
      break;
    }
  }
  res.value = value;
  res.iterations = it;
  res.stationarity = stationarity(res.point, shares);
  if (!res.converged && opts.restriction == MonotoneRestriction::none) {
    res.converged = res.stationarity <= opts.kkt_tol;
  }
  return res;
}

AscentResult multistart_simplex_ascent(const SimplexObjective& objective, std::size_t n, std::size_t restarts,
                                       std::uint64_t seed, const AscentOptions& opts, bool parallel) {
  restarts = std::max<std::size_t>(restarts, 1);
  std::vector<AscentResult> results(restarts);
  auto run = [&](std::size_t r) {
    if (r == 0) {
      results[r] = simplex_ascent(objective, std::vector<double>(n, 1.0 / double(n)), opts);
    } else {
      std::mt19937_64 rng(seed + r);
      results[r] = simplex_ascent(objective, random_simplex_point(n, rng), opts);
    }
  };
  // Restarts are independent; the reduction below walks them in index order so
  // the outcome does not depend on scheduling.
  const std::size_t workers =
      parallel ? std::min<std::size_t>(restarts, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) run(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < restarts;) run(r);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (results[r].value > results[best].value) best = r;
  }
  return std::move(results[best]);
}

}  // namespace hardylab
