#include "hardylab/norm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "hardylab/compensated_sum.hpp"
#include "hardylab/simplex_ascent.hpp"

namespace hardylab {
namespace {

void require_positive_p(const ExponentPair& e, const char* who) {
  if (e.negative()) throw InvalidArgument(std::string(who) + ": requires p > 1");
}

double power_sum(std::span<const double> x, double p) {
  CompensatedSum s;
  for (double v : x) s += std::pow(v, p);
  return s.value();
}

void normalize_p(std::vector<double>& a, double p) {
  const double scale = std::pow(power_sum(a, p), -1.0 / p);
  for (double& v : a) v *= scale;
}

// Residual of the stationarity system with A = A·a precomputed.
double kkt_with_means(const WeightSequence& w, double p, std::span<const double> a, std::span<const double> means,
                      double mu) {
  const std::size_t n = w.size();
  std::vector<double> lhs(n);
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    lhs[k] = mu * std::pow(a[k], p - 1.0) / w.lambda(k);
    scale = std::max(scale, lhs[k]);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double next = k + 1 < n ? lhs[k + 1] : 0.0;
    const double rhs = std::pow(means[k], p - 1.0) / w.big_lambda(k);
    worst = std::max(worst, std::abs(lhs[k] - next - rhs));
  }
  return scale > 0.0 ? worst / scale : worst;
}

// log-sum-exp accumulator.
struct LogSum {
  double top = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x <= top) {
      acc += std::exp(x - top);
    } else {
      acc = acc * std::exp(top - x) + 1.0;
      top = x;
    }
  }
  [[nodiscard]] double value() const { return top + std::log(acc); }
};

// F(a) for p < 0 and the shares c_k = a_k ∂_k F / F, computed in log space.
double negative_p_eval(const WeightSequence& w, double p, std::span<const double> a, std::span<double> shares) {
  const std::size_t n = w.size();
  for (double v : a) {
    if (!(v > 0.0)) {
      if (!shares.empty()) std::fill(shares.begin(), shares.end(), 1.0 / double(n));
      return 0.0;
    }
  }
  std::vector<double> log_term(n), log_b(n);
  LogSum running;
  for (std::size_t k = 0; k < n; ++k) {
    log_term[k] = std::log(w.lambda(k)) + std::log(a[k]) / p;
    running.add(log_term[k]);
    log_b[k] = running.value() - std::log(w.big_lambda(k));
  }
  CompensatedSum total;
  for (std::size_t k = 0; k < n; ++k) total += std::exp(p * log_b[k]);
  const double value = total.value();
  if (!shares.empty()) {
    const double log_value = std::log(value);
    LogSum tail;
    for (std::size_t k = n; k-- > 0;) {
      tail.add((p - 1.0) * log_b[k] - std::log(w.big_lambda(k)));
      shares[k] = std::exp(log_term[k] + tail.value() - log_value);
    }
  }
  return value;
}

}  // namespace

std::string to_string(MonotoneRestriction r) {
  switch (r) {
    case MonotoneRestriction::none: return "none";
    case MonotoneRestriction::decreasing: return "decreasing";
    case MonotoneRestriction::increasing: return "increasing";
  }
  return "unknown";
}

MonotoneRestriction monotone_restriction_from_string(const std::string& name) {
  if (name == "none") return MonotoneRestriction::none;
  if (name == "decreasing") return MonotoneRestriction::decreasing;
  if (name == "increasing") return MonotoneRestriction::increasing;
  throw InvalidArgument("unknown monotone restriction '" + name + "'");
}

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("solver tol must be positive");
  if (max_iter < 1) throw InvalidArgument("solver max_iter must be at least 1");
  if (!(kkt_tol > 0.0)) throw InvalidArgument("solver kkt_tol must be positive");
}

std::string to_string(SequenceShape s) {
  switch (s) {
    case SequenceShape::decreasing: return "decreasing";
    case SequenceShape::increasing: return "increasing";
    case SequenceShape::neither: return "neither";
  }
  return "unknown";
}

std::vector<double> apply_weighted_mean(const WeightSequence& w, std::span<const double> a) {
  if (a.size() != w.size()) throw InvalidArgument("apply_weighted_mean: length mismatch");
  std::vector<double> out(a.size());
  CompensatedSum running;
  for (std::size_t n = 0; n < a.size(); ++n) {
    running += w.lambda(n) * a[n];
    out[n] = running.value() / w.big_lambda(n);
  }
  return out;
}

double kkt_residual(const WeightSequence& w, const ExponentPair& e, std::span<const double> a, double mu) {
  require_positive_p(e, "kkt_residual");
  if (a.size() != w.size()) throw InvalidArgument("kkt_residual: length mismatch");
  for (double v : a) {
    if (!(v > 0.0)) throw InvalidArgument("kkt_residual: entries must be strictly positive");
  }
  const auto means = apply_weighted_mean(w, a);
  return kkt_with_means(w, e.p(), a, means, mu);
}

namespace {

struct Iterate {
  std::vector<double> x;
  double mu = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

using Stationarity = std::function<double(std::span<const double> x, std::span<const double> means, double mu)>;

// Maximizes Σ (A x)_n^p over Σ x_k^p = 1 (x > 0) by the fixed point
// x ← normalize((Aᵀ (A x)^(p−1))^(q−1)). Serves p > 1 and p < 0 alike; for
// p < 0 the simplex point is a = x^p.
Iterate power_iteration(const WeightSequence& w, double p, double q, const SolverOptions& opts, std::vector<double> x,
                        const Stationarity& stationarity) {
  const std::size_t n = w.size();
  const bool restricted = opts.monotone_restriction != MonotoneRestriction::none;
  if (restricted) x = monotone_projection(x, opts.monotone_restriction);
  normalize_p(x, p);
  std::vector<double> means = apply_weighted_mean(w, x);
  double mu = power_sum(means, p);

  Iterate best{x, mu, 0, false};
  std::vector<double> next(n);
  std::size_t it = 0;
  bool converged = false;
  for (; it < opts.max_iter; ++it) {
    // next_k = (λ_k Σ_{j≥k} A_j^(p−1)/Λ_j)^(q−1), formed in log space.
    CompensatedSum tail;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = n; k-- > 0;) {
      tail += std::pow(means[k], p - 1.0) / w.big_lambda(k);
      next[k] = (q - 1.0) * std::log(w.lambda(k) * tail.value());
      top = std::max(top, next[k]);
    }
    for (double& v : next) v = std::exp(v - top);
    if (restricted) next = monotone_projection(next, opts.monotone_restriction);
    normalize_p(next, p);

    std::vector<double> next_means = apply_weighted_mean(w, next);
    const double next_mu = power_sum(next_means, p);
    const double change = std::abs(next_mu - mu) / next_mu;
    x.swap(next);
    means.swap(next_means);
    mu = next_mu;
    if (mu > best.mu) {
      best.mu = mu;
      best.x = x;
    }
    if (change <= opts.tol && (restricted || stationarity(x, means, mu) <= opts.kkt_tol)) {
      converged = true;
      ++it;
      break;
    }
  }
  // Unrestricted iterates increase monotonically, so the last one is the best
  // up to rounding; projected iterates need not.
  if (!restricted) {
    best.x = std::move(x);
    best.mu = mu;
  }
  best.iterations = it;
  best.converged = converged;
  return best;
}

}  // namespace

NormResult operator_norm(const WeightSequence& w, const ExponentPair& e, const SolverOptions& opts) {
  require_positive_p(e, "operator_norm");
  opts.validate();
  const std::size_t n = w.size();
  const double p = e.p();
  NormResult res;
  if (n == 1) {
    res.mu = res.norm = 1.0;
    res.maximizer = {1.0};
    res.converged = true;
    return res;
  }
  Stationarity kkt = [&w, p](std::span<const double> x, std::span<const double> means, double mu) {
    return kkt_with_means(w, p, x, means, mu);
  };
  Iterate best = power_iteration(w, p, e.q(), opts, std::vector<double>(n, 1.0), kkt);
  res.mu = best.mu;
  res.norm = std::pow(best.mu, 1.0 / p);
  res.maximizer = std::move(best.x);
  const auto final_means = apply_weighted_mean(w, res.maximizer);
  res.kkt_residual = kkt_with_means(w, p, res.maximizer, final_means, res.mu);
  res.iterations = best.iterations;
  res.converged = best.converged;
  return res;
}

double negative_p_objective(const WeightSequence& w, const ExponentPair& e, std::span<const double> a) {
  if (!e.negative()) throw InvalidArgument("negative_p_objective: requires p < 0");
  if (a.size() != w.size()) throw InvalidArgument("negative_p_objective: length mismatch");
  for (double v : a) {
    if (v < 0.0) throw InvalidArgument("negative_p_objective: entries must be nonnegative");
  }
  return negative_p_eval(w, e.p(), a, {});
}

double negative_p_kkt_residual(const WeightSequence& w, const ExponentPair& e, std::span<const double> a) {
  if (!e.negative()) throw InvalidArgument("negative_p_kkt_residual: requires p < 0");
  if (a.size() != w.size()) throw InvalidArgument("negative_p_kkt_residual: length mismatch");
  double total = 0.0;
  for (double v : a) {
    if (!(v > 0.0)) throw InvalidArgument("negative_p_kkt_residual: entries must be strictly positive");
    total += v;
  }
  std::vector<double> normalized(a.begin(), a.end());
  for (double& v : normalized) v /= total;
  std::vector<double> shares(a.size());
  negative_p_eval(w, e.p(), normalized, shares);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(shares[k] / normalized[k] - 1.0));
  return worst;
}

NormResult norm_negative_p(const WeightSequence& w, const ExponentPair& e, const SolverOptions& opts) {
  if (!e.negative()) throw InvalidArgument("norm_negative_p: requires p < 0");
  opts.validate();
  const std::size_t n = w.size();
  NormResult res;
  if (n == 1) {
    res.mu = res.norm = 1.0;
    res.maximizer = {1.0};
    res.converged = true;
    return res;
  }
  const double p = e.p();
  auto to_simplex = [p](std::span<const double> x) {
    std::vector<double> a(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) a[k] = std::pow(x[k], p);
    double total = 0.0;
    for (double v : a) total += v;
    for (double& v : a) v /= total;
    return a;
  };
  Stationarity simplex_kkt = [&](std::span<const double> x, std::span<const double>, double) {
    const auto a = to_simplex(x);
    std::vector<double> shares(n);
    negative_p_eval(w, p, a, shares);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(shares[k] / a[k] - 1.0));
    return worst;
  };

  // The objective is concave in a, so every start reaches the same value;
  // a few random starts cross-check the uniform one.
  const std::size_t runs = std::min<std::size_t>(std::max<std::size_t>(opts.restarts, 1), 4);
  Iterate best;
  best.mu = -1.0;
  for (std::size_t r = 0; r < runs; ++r) {
    std::vector<double> start(n, 1.0);
    if (r > 0) {
      std::mt19937_64 rng(opts.seed + r);
      const auto a = random_simplex_point(n, rng);
      for (std::size_t k = 0; k < n; ++k) start[k] = std::pow(a[k], 1.0 / p);
    }
    Iterate cand = power_iteration(w, p, e.q(), opts, std::move(start), simplex_kkt);
    if (cand.mu > best.mu || (cand.converged && !best.converged && cand.mu >= best.mu * (1.0 - 1e-12))) {
      best = std::move(cand);
    }
  }
  res.mu = res.norm = best.mu;
  res.maximizer = to_simplex(best.x);
  res.iterations = best.iterations;
  res.converged = best.converged;

  if (!best.converged) {
    // Fall back to mirror ascent directly on the simplex.
    SimplexObjective objective = [&w, p](std::span<const double> a, std::span<double> shares) {
      return negative_p_eval(w, p, a, shares);
    };
    AscentOptions ascent{opts.tol, opts.kkt_tol, opts.max_iter, opts.monotone_restriction};
    AscentResult alt = multistart_simplex_ascent(objective, n, runs, opts.seed, ascent);
    if (alt.value > res.mu) {
      res.mu = res.norm = alt.value;
      res.maximizer = std::move(alt.point);
      res.converged = alt.converged;
    }
    res.iterations += alt.iterations;
  }
  res.kkt_residual = negative_p_kkt_residual(w, e, res.maximizer);
  return res;
}

std::vector<double> matrix_input_sequence(std::span<const double> a, const ExponentPair& e) {
  if (!e.negative()) return {a.begin(), a.end()};
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) b[k] = std::pow(a[k], 1.0 / e.p());
  return b;
}

SequenceShape maximizer_shape(std::span<const double> a, double tol) {
  if (a.size() < 2) return SequenceShape::decreasing;
  double top = 0.0;
  for (double v : a) top = std::max(top, std::abs(v));
  if (top == 0.0) return SequenceShape::decreasing;
  bool down = true;
  bool up = true;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    const double step = (a[k + 1] - a[k]) / top;
    down = down && step <= tol;
    up = up && step >= -tol;
  }
  if (down) return SequenceShape::decreasing;
  if (up) return SequenceShape::increasing;
  return SequenceShape::neither;
}

std::vector<double> monotone_projection(std::span<const double> a, MonotoneRestriction r) {
  std::vector<double> out(a.begin(), a.end());
  if (r == MonotoneRestriction::none || out.size() < 2) return out;
  const bool decreasing = r == MonotoneRestriction::decreasing;
  // Blocks of pooled values; for a nonincreasing fit a violation is a block
  // mean exceeding its predecessor's.
  std::vector<double> mean;
  std::vector<std::size_t> count;
  for (double v : out) {
    mean.push_back(v);
    count.push_back(1);
    while (mean.size() > 1) {
      const std::size_t j = mean.size() - 1;
      const bool violates = decreasing ? mean[j] > mean[j - 1] : mean[j] < mean[j - 1];
      if (!violates) break;
      const double pooled = (mean[j - 1] * double(count[j - 1]) + mean[j] * double(count[j])) /
                            double(count[j - 1] + count[j]);
      count[j - 1] += count[j];
      mean[j - 1] = pooled;
      mean.pop_back();
      count.pop_back();
    }
  }
  std::size_t pos = 0;
  for (std::size_t b = 0; b < mean.size(); ++b) {
    for (std::size_t c = 0; c < count[b]; ++c) out[pos++] = mean[b];
  }
  return out;
}

}  // namespace hardylab
