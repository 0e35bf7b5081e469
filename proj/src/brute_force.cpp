// Oracle for small sections. Deliberately shares no code with the solvers:
// the matrix is formed densely and the search is plain gradient ascent.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hardylab/norm_solver.hpp"

namespace hardylab {
namespace {

using Dense = std::vector<std::vector<double>>;

Dense dense_matrix(const WeightSequence& w) {
  const std::size_t n = w.size();
  Dense m(n, std::vector<double>(n, 0.0));
  double total = 0.0;
  for (std::size_t row = 0; row < n; ++row) {
    total += w.lambda(row);
    for (std::size_t col = 0; col <= row; ++col) m[row][col] = w.lambda(col) / total;
  }
  return m;
}

class Ratio {
 public:
  Ratio(Dense m, double p) : m_(std::move(m)), p_(p) {}

  // Objective at a = exp(t) and its gradient with respect to t.
  double operator()(const std::vector<double>& t, std::vector<double>* grad) const {
    const std::size_t n = t.size();
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = std::exp(t[k]);
    return p_ > 0.0 ? positive(a, grad) : negative(a, grad);
  }

 private:
  double positive(const std::vector<double>& a, std::vector<double>* grad) const {
    const std::size_t n = a.size();
    std::vector<double> y(n, 0.0);
    double top = 0.0, bottom = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) y[r] += m_[r][c] * a[c];
      top += std::pow(y[r], p_);
      bottom += std::pow(a[r], p_);
    }
    if (grad) {
      for (std::size_t k = 0; k < n; ++k) {
        double back = 0.0;
        for (std::size_t r = 0; r < n; ++r) back += m_[r][k] * std::pow(y[r], p_ - 1.0);
        (*grad)[k] = a[k] * p_ * (back / bottom - std::pow(a[k], p_ - 1.0) * top / (bottom * bottom));
      }
    }
    return top / bottom;
  }

  double negative(const std::vector<double>& a, std::vector<double>* grad) const {
    const std::size_t n = a.size();
    std::vector<double> b(n), big(n, 0.0);
    double total = 0.0, mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      b[k] = std::pow(a[k], 1.0 / p_);
      mass += a[k];
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) big[r] += m_[r][c] * b[c];
      total += std::pow(big[r], p_);
    }
    if (grad) {
      for (std::size_t k = 0; k < n; ++k) {
        double back = 0.0;
        for (std::size_t r = 0; r < n; ++r) back += m_[r][k] * std::pow(big[r], p_ - 1.0);
        const double partial = std::pow(a[k], 1.0 / p_ - 1.0) * back;
        (*grad)[k] = a[k] * (partial / mass - total / (mass * mass));
      }
    }
    return total / mass;
  }

  Dense m_;
  double p_;
};

double climb(const Ratio& f, std::vector<double> t, std::size_t iterations) {
  const std::size_t n = t.size();
  std::vector<double> g(n), g_trial(n), trial(n);
  double value = f(t, &g);
  double h = 0.1;
  for (std::size_t it = 0; it < iterations; ++it) {
    double gnorm = 0.0;
    for (double v : g) gnorm = std::max(gnorm, std::abs(v));
    if (gnorm <= 1e-15 * value) break;
    for (std::size_t k = 0; k < n; ++k) trial[k] = t[k] + h * g[k] / value;
    const double shift = *std::max_element(trial.begin(), trial.end());
    for (double& v : trial) v = std::max(v - shift, -600.0);
    const double next = f(trial, &g_trial);
    if (next > value) {
      t.swap(trial);
      g.swap(g_trial);
      value = next;
      h *= 1.3;
    } else {
      h *= 0.5;
      if (h < 1e-18) break;
    }
  }
  return value;
}

// Visits every point of the simplex grid with the given resolution.
void simplex_grid(std::size_t n, std::size_t resolution, const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> parts(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
    if (idx + 1 == n) {
      parts[idx] = left;
      std::vector<double> b(n);
      for (std::size_t k = 0; k < n; ++k) b[k] = double(parts[k]) / double(resolution);
      visit(b);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      parts[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, resolution);
}

}  // namespace

double brute_force_norm(const WeightSequence& w, const ExponentPair& e, const SolverOptions& opts) {
  const std::size_t n = w.size();
  if (n > kBruteForceMaxN) throw InvalidArgument("brute_force_norm: N must be at most 6");
  if (n == 1) return 1.0;
  const double p = e.p();
  const Ratio f(dense_matrix(w), p);

  std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + 17);
  std::uniform_real_distribution<double> spread(-4.0, 4.0);
  std::vector<std::vector<double>> starts;
  const std::size_t random_starts = std::max<std::size_t>(opts.restarts, 100);
  for (std::size_t s = 0; s < random_starts; ++s) {
    std::vector<double> t(n);
    for (double& v : t) v = spread(rng);
    starts.push_back(std::move(t));
  }
  if (n <= 3) {
    double best = -1.0;
    std::vector<double> best_t;
    simplex_grid(n, n == 2 ? 2000 : 200, [&](const std::vector<double>& b) {
      std::vector<double> t(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double entry = p > 0.0 ? std::pow(b[k], 1.0 / p) : b[k];
        t[k] = std::log(std::max(entry, 1e-12));
      }
      const double v = f(t, nullptr);
      if (v > best) {
        best = v;
        best_t = t;
      }
    });
    starts.push_back(best_t);
  }

  double best_value = 0.0;
  std::vector<double> best_start;
  for (const auto& t : starts) {
    const double v = climb(f, t, 400);
    if (v > best_value) {
      best_value = v;
      best_start = t;
    }
  }
  best_value = std::max(best_value, climb(f, best_start, 200000));
  return p > 0.0 ? std::pow(best_value, 1.0 / p) : best_value;
}

}  // namespace hardylab
