#include "hardylab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardylab/compensated_sum.hpp"
#include "hardylab/simplex_ascent.hpp"

namespace hardylab {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// x^t − (x − h)^t for 0 ≤ h ≤ x without cancellation.
double power_step(double x, double h, double t) {
  if (h >= x) return std::pow(x, t);
  return -std::pow(x, t) * std::expm1(t * std::log1p(-h / x));
}

std::vector<double> prefix_sums(std::span<const double> v) {
  std::vector<double> out(v.size());
  CompensatedSum s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    s += v[k];
    out[k] = s.value();
  }
  return out;
}

void require_positive(std::span<const double> v, const char* what) {
  for (double x : v) require(x > 0.0 && std::isfinite(x), what);
}

double relative_slack(double lhs, double rhs) { return (rhs - lhs) / rhs; }

}  // namespace

double hardy_ratio(const WeightSequence& w, const ExponentPair& e, std::span<const double> a) {
  require(!e.negative(), "hardy_ratio: requires p > 1");
  require(a.size() == w.size(), "hardy_ratio: length mismatch");
  double top = 0.0;
  for (double v : a) {
    require(v >= 0.0 && std::isfinite(v), "hardy_ratio: entries must be nonnegative");
    top = std::max(top, v);
  }
  require(top > 0.0, "hardy_ratio: zero sequence");
  // Scale by the largest entry first; the ratio is homogeneous of degree 0.
  std::vector<double> scaled(a.begin(), a.end());
  for (double& v : scaled) v /= top;
  const double p = e.p();
  const auto means = apply_weighted_mean(w, scaled);
  CompensatedSum num, den;
  for (std::size_t n = 0; n < scaled.size(); ++n) {
    num += std::pow(means[n], p);
    den += std::pow(scaled[n], p);
  }
  return num.value() / den.value();
}

WorstCase worst_case_search(const WeightSequence& w, const ExponentPair& e, const SolverOptions& opts) {
  WorstCase out;
  out.solver = e.negative() ? norm_negative_p(w, e, opts) : operator_norm(w, e, opts);
  out.a = out.solver.maximizer;
  out.ratio = out.solver.mu;
  return out;
}

double carleman_ratio(const WeightSequence& w, std::span<const double> a) {
  require(a.size() == w.size(), "carleman_ratio: length mismatch");
  require_positive(a, "carleman_ratio: entries must be positive");
  double top = 0.0;
  for (double v : a) top = std::max(top, v);
  CompensatedSum log_sum, lhs, rhs;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double scaled = a[n] / top;
    log_sum += w.lambda(n) * std::log(scaled);
    lhs += std::exp(log_sum.value() / w.big_lambda(n));
    rhs += scaled;
  }
  return lhs.value() / rhs.value();
}

CarlemanProbe carleman_probe(double alpha, std::size_t n, const SolverOptions& opts) {
  require(std::isfinite(alpha) && alpha > -1.0, "carleman_probe: alpha > -1");
  require(n >= 1, "carleman_probe: N >= 1");
  opts.validate();
  const WeightSequence w = make_weights(GeneratorSpec::power(alpha, n));

  // G(a) = Σ_n g_n with g_n = exp(Σ_{k≤n} λ_k log a_k/Λ_n); a_k ∂_k G = λ_k Σ_{n≥k} g_n/Λ_n.
  SimplexObjective objective = [&w](std::span<const double> a, std::span<double> shares) {
    const std::size_t m = a.size();
    std::vector<double> g(m);
    CompensatedSum log_sum, total;
    for (std::size_t k = 0; k < m; ++k) {
      log_sum += w.lambda(k) * std::log(a[k]);
      g[k] = std::exp(log_sum.value() / w.big_lambda(k));
      total += g[k];
    }
    const double value = total.value();
    CompensatedSum tail;
    for (std::size_t k = m; k-- > 0;) {
      tail += g[k] / w.big_lambda(k);
      shares[k] = w.lambda(k) * tail.value() / value;
    }
    return value;
  };
  AscentOptions ascent{opts.tol, opts.kkt_tol, opts.max_iter, opts.monotone_restriction};
  AscentResult best = multistart_simplex_ascent(objective, n, opts.restarts, opts.seed, ascent, true);

  CarlemanProbe out;
  out.estimate = best.value;
  out.target = std::exp(1.0 / (alpha + 1.0));
  out.within_target = out.estimate <= out.target + 1e-6;
  out.maximizer = std::move(best.point);
  out.stationarity = best.stationarity;
  out.iterations = best.iterations;
  return out;
}

void BlissParams::validate() const {
  require(std::isfinite(r) && std::isfinite(s) && std::isfinite(alpha), "BlissParams: non-finite value");
  require(r > 1.0, "BlissParams: r > 1");
  require(s > 0.0 && s < r - 1.0, "BlissParams: 0 < s < r - 1");
  require((alpha + 1.0) * p() > 1.0, "BlissParams: (alpha + 1) p > 1");
}

double bliss_constant(const BlissParams& params) {
  params.validate();
  const double r = params.r, s = params.s, q = params.q();
  const double log_k = -std::log(r - s - 1.0) - (r - s) * std::log1p(params.alpha * q) +
                       s * (std::log(s) + std::lgamma(r / s) - std::lgamma(1.0 / s) - std::lgamma((r - 1.0) / s));
  return std::exp(log_k);
}

double discrete_bliss_constant(double r, double s, double alpha) {
  return s * std::pow(alpha, r) * bliss_constant({r, s - 1.0, alpha - 1.0});
}

BlissCheck verify_discrete_bliss(std::span<const double> u, std::span<const double> v, std::span<const double> a,
                                 double r, double s, double alpha) {
  require(r > s && s > 1.0, "verify_discrete_bliss: r > s > 1");
  require(alpha > s / r && alpha <= 1.0, "verify_discrete_bliss: s/r < alpha <= 1");
  require(u.size() == v.size() && v.size() == a.size() && !u.empty(), "verify_discrete_bliss: equal, nonzero lengths");
  require_positive(u, "verify_discrete_bliss: u must be positive");
  require_positive(v, "verify_discrete_bliss: v must be positive");
  require_positive(a, "verify_discrete_bliss: a must be positive");
  const std::vector<double> V = prefix_sums(v);
  const std::size_t n = u.size();

  BlissCheck out;
  out.hypothesis = true;
  CompensatedSum hyp;
  for (std::size_t m = 0; m < n; ++m) {
    hyp += u[m] * std::pow(V[m], alpha * r);
    const double rhs = std::pow(V[m], s);
    if (hyp.value() > rhs * (1.0 + 1e-12)) {
      out.hypothesis = false;
      out.hypothesis_failure = m + 1;
      return out;
    }
  }

  CompensatedSum inner, lhs, mass;
  for (std::size_t k = 0; k < n; ++k) {
    inner += power_step(V[k], v[k], alpha) * a[k];
    lhs += u[k] * std::pow(inner.value(), r);
    mass += v[k] * std::pow(a[k], r / s);
  }
  out.lhs = lhs.value();
  out.rhs = discrete_bliss_constant(r, s, alpha) * std::pow(mass.value(), s);
  out.slack = relative_slack(out.lhs, out.rhs);
  out.conclusion = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

double carleman_type_constant(double s, double alpha) {
  require(std::isfinite(s) && s > 1.0, "carleman_type_constant: s > 1");
  require(alpha > 0.0 && alpha <= 1.0, "carleman_type_constant: 0 < alpha <= 1");
  const double t = s - 1.0;
  const double log_c = -(alpha - 1.0) * s / alpha - (1.0 - s) * std::log(alpha) + std::log(s) - std::log(t) +
                       t * (std::log(t) - std::lgamma(1.0 / t));
  return std::exp(log_c);
}

InequalityVerdict verify_carleman_type(std::span<const double> v, std::span<const double> a, double s,
                                       double alpha) {
  const double constant = carleman_type_constant(s, alpha);
  require(v.size() == a.size() && !v.empty(), "verify_carleman_type: equal, nonzero lengths");
  require_positive(v, "verify_carleman_type: v must be positive");
  require_positive(a, "verify_carleman_type: a must be positive");
  const std::vector<double> V = prefix_sums(v);
  CompensatedSum log_sum, lhs, mass;
  for (std::size_t n = 0; n < v.size(); ++n) {
    log_sum += power_step(V[n], v[n], alpha) * std::log(a[n]);
    const double weight = power_step(V[n], v[n], s);
    lhs += weight * std::exp(s * log_sum.value() / std::pow(V[n], alpha));
    mass += v[n] * a[n];
  }
  InequalityVerdict out;
  out.lhs = lhs.value();
  out.rhs = constant * std::pow(mass.value(), s);
  out.slack = relative_slack(out.lhs, out.rhs);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unproven: return "unproven";
  }
  return "unknown";
}

MeanPowerFamilyResult verify_mean_power_family(double alpha, double beta, const ExponentPair& e, std::span<const double> a) {
  require(!e.negative(), "verify_mean_power_family: requires p > 1");
  require(std::isfinite(alpha) && std::isfinite(beta) && beta >= alpha && alpha >= 1.0,
          "verify_mean_power_family: need beta >= alpha >= 1");
  const double p = e.p();
  const WeightSequence w = make_weights(GeneratorSpec::mean_power(alpha, beta, a.size()));
  MeanPowerFamilyResult out;
  out.ratio = hardy_ratio(w, e, a);
  out.target = std::pow(alpha * p / (alpha * p - 1.0), p);
  out.in_window = beta == alpha || (alpha <= 1.0 + 1.0 / p && beta <= 2.0);
  if (out.in_window) out.verdict = out.ratio <= out.target * (1.0 + 1e-12) ? Verdict::pass : Verdict::fail;
  return out;
}

DualityCheck duality_p2_check(double alpha, std::span<const double> x, std::span<const double> y) {
  require(alpha >= 1.0 && alpha <= 1.5, "duality_p2_check: need 1 <= alpha <= 3/2");
  require(x.size() == y.size() && !x.empty(), "duality_p2_check: equal, nonzero lengths");
  require(x.size() <= kDualityMaxN, "duality_p2_check: N <= 1000");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] >= 0.0 && y[i] >= 0.0, "duality_p2_check: entries must be nonnegative");
  }
  const std::size_t n = x.size();
  const double r = 2.0 * alpha - 1.0;
  std::vector<double> xs(n), ys(n), pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double idx = double(i + 1);
    xs[i] = x[i] / std::pow(idx, alpha);
    ys[i] = y[i] / std::pow(idx, alpha);
    pw[i] = std::pow(idx, r);
  }
  const double scale = alpha * alpha / r;
  CompensatedSum bilinear, xx, yy;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bilinear += pw[std::min(i, j)] * xs[i] * ys[j];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  DualityCheck out;
  out.bilinear = scale * bilinear.value();
  const double c = alpha / (alpha - 0.5);
  out.bound = c * c * std::sqrt(xx.value()) * std::sqrt(yy.value());
  out.slack = out.bound > 0.0 ? relative_slack(out.bilinear, out.bound) : 0.0;
  out.holds = out.bilinear <= out.bound * (1.0 + 1e-12);

  if (std::equal(x.begin(), x.end(), y.begin())) {
    // min(i,j)^(2α−1)/(2α−1) = Σ_{n≤min(i,j)} (n^(2α−1) − (n−1)^(2α−1))/(2α−1).
    CompensatedSum tail, dual;
    for (std::size_t k = n; k-- > 0;) {
      tail += xs[k];
      const double w2 = scale * power_step(double(k + 1), 1.0, r);
      dual += w2 * tail.value() * tail.value();
    }
    out.dual_form = dual.value();
  }
  return out;
}

}  // namespace hardylab
