#include "hardylab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hardylab/compensated_sum.hpp"
#include "hardylab/norm_solver.hpp"

namespace hardylab {
namespace {

double relative_room(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  return (rhs - lhs) / scale;
}

bool within(double lhs, double rhs) { return lhs <= rhs + kNonStrictSlack * std::max(1.0, std::abs(rhs)); }

// Tracks the per-index verdicts of lhs ≤ rhs.
class IndexScan {
 public:
  explicit IndexScan(ConditionReport& report) : report_(report) {}

  void check(std::size_t index, double lhs, double rhs) {
    const double room = relative_room(lhs, rhs);
    report_.margin = report_.margin ? std::min(*report_.margin, room) : room;
    if (!within(lhs, rhs) && !report_.first_failure_index) report_.first_failure_index = index;
  }

  void finish() { report_.holds = !report_.first_failure_index; }

 private:
  ConditionReport& report_;
};

double cartlidge_bound(double p, double L) { return std::pow(p / (p - L), p); }

}  // namespace

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::cartlidge: return "cartlidge";
    case ConditionId::gao: return "gao";
    case ConditionId::decreasing_determination_u: return "decreasing_determination_u";
    case ConditionId::decreasing_determination_l: return "decreasing_determination_l";
    case ConditionId::inf_difference: return "inf_difference";
    case ConditionId::necessary: return "necessary";
    case ConditionId::concave_limit: return "concave_limit";
    case ConditionId::rows_decreasing: return "rows_decreasing";
    case ConditionId::compare_matrices: return "compare_matrices";
    case ConditionId::kaluza_szego: return "kaluza_szego";
  }
  return "unknown";
}

std::optional<double> ConditionReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::nullopt;
}

ConditionReport cartlidge(const WeightSequence& w, const ExponentPair& e) {
  ConditionReport r;
  r.id = ConditionId::cartlidge;
  r.section_length = w.size();
  double L = 0.0;
  std::size_t arg = 0;
  for (std::size_t n = 0; n + 1 < w.size(); ++n) {
    const double d = w.ratio(n + 1) - w.ratio(n);
    if (n == 0 || d > L) {
      L = d;
      arg = n + 1;
    }
  }
  r.constant = L;
  r.extras.emplace_back("argmax_index", double(arg));
  const double p = e.p();
  if (e.negative()) {
    r.holds = true;
  } else {
    r.holds = L < p;
    r.margin = (p - L) / p;
    if (!r.holds) {
      for (std::size_t n = 0; n + 1 < w.size(); ++n) {
        if (w.ratio(n + 1) - w.ratio(n) >= p) {
          r.first_failure_index = n + 1;
          break;
        }
      }
    }
  }
  if (r.holds) r.implied_bound = cartlidge_bound(p, L);
  return r;
}

ConditionReport gao_condition(const WeightSequence& w, const ExponentPair& e, double L) {
  const double p = e.p();
  if (!std::isfinite(L) || !(L > 0.0) || (!e.negative() && !(L < p))) {
    throw InvalidArgument("gao_condition: need 0 < L < p (p > 1) or L > 0 (p < 0)");
  }
  ConditionReport r;
  r.id = ConditionId::gao;
  r.section_length = w.size();
  r.constant = L;
  IndexScan scan(r);
  for (std::size_t n = 0; n + 1 < w.size(); ++n) {
    const double ratio = w.ratio(n);
    // (1 − L/(p ρ_n))^(1−p) through log1p to stay finite for large |1 − p|.
    const double factor = std::exp((1.0 - p) * std::log1p(-L / (p * ratio)));
    scan.check(n + 1, w.ratio(n + 1), ratio * factor + L / p);
  }
  scan.finish();
  if (r.holds) r.implied_bound = cartlidge_bound(p, L);
  return r;
}

ConditionReport decreasing_determination(const WeightSequence& w, const ExponentPair& e, double bound,
                                         DeterminationForm form) {
  const double p = e.p();
  ConditionReport r;
  r.section_length = w.size();
  r.constant = bound;
  double threshold = 0.0;
  if (form == DeterminationForm::u_form) {
    if (!std::isfinite(bound) || !(bound > 0.0)) throw InvalidArgument("decreasing_determination: U must be positive");
    r.id = ConditionId::decreasing_determination_u;
  } else {
    if (!std::isfinite(bound) || bound < 0.0 || (!e.negative() && !(bound < p))) {
      throw InvalidArgument("decreasing_determination: need 0 <= L < p");
    }
    r.id = ConditionId::decreasing_determination_l;
    threshold = std::pow(1.0 - bound / p, p);
  }
  IndexScan scan(r);
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const double gap = 1.0 / w.lambda(k) - 1.0 / w.lambda(k + 1);
    if (form == DeterminationForm::u_form) {
      scan.check(k + 1, bound * gap, 1.0 / w.big_lambda(k));
    } else {
      scan.check(k + 1, w.big_lambda(k) * gap, threshold);
    }
  }
  scan.finish();
  r.extras.emplace_back("determined_on_decreasing", r.holds && !e.negative() ? 1.0 : 0.0);
  r.extras.emplace_back("determined_on_increasing", r.holds && e.negative() ? 1.0 : 0.0);
  return r;
}

double inf_difference(const WeightSequence& w) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 1 < w.size(); ++n) best = std::min(best, w.ratio(n + 1) - w.ratio(n));
  return best;
}

ConditionReport necessary_condition(const WeightSequence& w, double mu) {
  if (!std::isfinite(mu) || !(mu > 0.0)) throw InvalidArgument("necessary_condition: mu must be positive");
  ConditionReport r;
  r.id = ConditionId::necessary;
  r.section_length = w.size();
  r.constant = mu;
  IndexScan scan(r);
  if (w.size() >= 2) scan.check(1, mu * (1.0 / w.lambda(0) - 1.0 / w.lambda(1)), 1.0 / w.lambda(0));
  scan.finish();
  const ProfileShape shape = ratio_profile(w).shape;
  const bool convex = shape == ProfileShape::convex || shape == ProfileShape::affine;
  r.extras.emplace_back("convex_profile", convex ? 1.0 : 0.0);
  r.extras.emplace_back("sufficient", convex && r.holds ? 1.0 : 0.0);
  return r;
}

double limit_ratio_estimate(const WeightSequence& w) {
  const std::size_t n = w.size();
  if (n < 4) return w.ratio(n - 1) / double(n);
  // Λ_n/λ_n ≈ L n + c, so the slope over the second half removes the constant.
  const std::size_t m = n / 2;
  return (w.ratio(n - 1) - w.ratio(m - 1)) / double(n - m);
}

ConditionReport concave_limit_condition(const WeightSequence& w, double L) {
  if (!(L >= 0.0 && L <= 1.0)) throw InvalidArgument("concave_limit_condition: need 0 <= L <= 1");
  if (w.size() < 2) throw InvalidArgument("concave_limit_condition: need N >= 2");
  const double estimate = limit_ratio_estimate(w);
  if (std::abs(estimate - L) > 1e-2) {
    throw InvalidArgument("concave_limit_condition: supplied L is inconsistent with the weights");
  }
  ConditionReport r;
  r.id = ConditionId::concave_limit;
  r.section_length = w.size();
  const double value = std::exp(w.lambda(0) / w.lambda(1)) * (1.0 - L);
  r.constant = value;
  r.margin = 1.0 - value;
  const RatioProfile profile = ratio_profile(w);
  const bool concave = profile.shape == ProfileShape::concave || profile.shape == ProfileShape::affine;
  r.extras.emplace_back("limit_estimate", estimate);
  r.extras.emplace_back("concave_profile", concave ? 1.0 : 0.0);
  r.holds = concave && value < 1.0;
  if (!r.holds) {
    if (value >= 1.0) {
      r.first_failure_index = 1;
    } else {
      for (std::size_t i = 0; i + 1 < profile.first_difference.size(); ++i) {
        if (profile.first_difference[i + 1] - profile.first_difference[i] > kShapeTolerance) {
          r.first_failure_index = i + 1;
          break;
        }
      }
    }
  }
  return r;
}

bool rows_decreasing(const WeightSequence& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w.lambda(k + 1) > w.lambda(k)) return false;
  }
  return true;
}

ConditionReport compare_matrices(const WeightSequence& w, const WeightSequence& w2) {
  if (w.size() != w2.size()) throw InvalidArgument("compare_matrices: length mismatch");
  const std::size_t n = w.size();
  ConditionReport r;
  r.id = ConditionId::compare_matrices;
  r.section_length = n;
  IndexScan scan(r);
  for (std::size_t i = 0; i < n; ++i) scan.check(i + 1, w.ratio(i), w2.ratio(i));
  scan.finish();

  bool prefix_ok = true;
  std::size_t pairs = 0;
  auto check_pair = [&](std::size_t k, std::size_t m) {
    ++pairs;
    if (!within(w.big_lambda(k) / w.big_lambda(m), w2.big_lambda(k) / w2.big_lambda(m))) prefix_ok = false;
  };
  if (n <= 200) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k <= m; ++k) check_pair(k, m);
    }
  } else {
    for (std::size_t m = 0; m < n; ++m) check_pair(m == 0 ? 0 : m - 1, m);
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int s = 0; s < 20000; ++s) {
      std::size_t a = pick(rng), b = pick(rng);
      check_pair(std::min(a, b), std::max(a, b));
    }
  }
  r.extras.emplace_back("prefix_ratio_holds", prefix_ok ? 1.0 : 0.0);
  r.extras.emplace_back("prefix_pairs_checked", double(pairs));
  if (r.holds && !prefix_ok) r.holds = false;
  return r;
}

bool majorization_check(std::span<const double> u, std::span<const double> v, std::span<const double> a) {
  const std::size_t n = u.size();
  if (v.size() != n || a.size() != n) throw InvalidArgument("majorization_check: length mismatch");
  if (n == 0) return true;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] < 0.0 || v[i] < 0.0) throw InvalidArgument("majorization_check: u and v must be nonnegative");
    scale += u[i] + v[i];
  }
  const double slack = 1e-12 * std::max(scale, 1.0);
  CompensatedSum su, sv;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sv += v[i];
    if (i + 1 < n && su.value() > sv.value() + slack) {
      throw PrefixHypothesisError(i + 1, "majorization_check: prefix sum of u exceeds prefix sum of v");
    }
  }
  if (std::abs(su.value() - sv.value()) > slack) {
    throw PrefixHypothesisError(n, "majorization_check: totals of u and v differ");
  }
  const SequenceShape shape = maximizer_shape(a, 0.0);
  if (shape == SequenceShape::neither) throw InvalidArgument("majorization_check: a must be monotone");

  CompensatedSum left, right;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    left += u[i] * a[i];
    right += v[i] * a[i];
    magnitude += std::abs(u[i] * a[i]) + std::abs(v[i] * a[i]);
  }
  const double tol = 1e-12 * std::max(magnitude, 1e-300);
  const bool decreasing_ok = left.value() <= right.value() + tol;
  const bool increasing_ok = left.value() >= right.value() - tol;
  bool is_increasing = true, is_decreasing = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    is_decreasing = is_decreasing && a[i + 1] <= a[i];
    is_increasing = is_increasing && a[i + 1] >= a[i];
  }
  return (!is_decreasing || decreasing_ok) && (!is_increasing || increasing_ok);
}

InequalityCheck negative_p_cartlidge_inequality(const WeightSequence& w, const ExponentPair& e,
                                                std::span<const double> a, double L) {
  if (!e.negative()) throw InvalidArgument("negative_p_cartlidge_inequality: requires p < 0");
  for (double v : a) {
    if (!(v > 0.0)) throw InvalidArgument("negative_p_cartlidge_inequality: entries must be positive");
  }
  const double p = e.p();
  const auto means = apply_weighted_mean(w, a);
  CompensatedSum lhs, cross;
  for (std::size_t n = 0; n < a.size(); ++n) {
    lhs += std::pow(means[n], p);
    cross += a[n] * std::pow(means[n], p - 1.0);
  }
  InequalityCheck out;
  out.lhs = lhs.value();
  out.rhs = p / (p - L) * cross.value();
  out.holds = out.rhs <= out.lhs + kNonStrictSlack * std::max(1.0, std::abs(out.lhs));
  return out;
}

}  // namespace hardylab
