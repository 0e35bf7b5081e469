#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardylab/sequences.hpp"

namespace hardylab {

enum class ConditionId {
  cartlidge,
  gao,
  decreasing_determination_u,
  decreasing_determination_l,
  inf_difference,
  necessary,
  concave_limit,
  rows_decreasing,
  compare_matrices,
  kaluza_szego,
};

[[nodiscard]] std::string to_string(ConditionId id);

/// Verdict of one sufficient or necessary condition on a finite section.
/// Indices are 1-based. `margin` is the smallest relative room
/// (rhs − lhs)/max(|lhs|, |rhs|) over the checked indices; negative on failure.
struct ConditionReport {
  ConditionId id = ConditionId::cartlidge;
  bool holds = false;
  std::optional<std::size_t> first_failure_index;
  std::optional<double> constant;
  std::optional<double> implied_bound;  ///< bound on μ = ||A||^p when a bound theorem applies
  std::size_t section_length = 0;
  std::optional<double> margin;
  std::vector<std::pair<std::string, double>> extras;

  [[nodiscard]] std::optional<double> extra(const std::string& key) const;
};

/// Slack for non-strict inequalities: lhs ≤ rhs + kNonStrictSlack·max(1, |rhs|).
inline constexpr double kNonStrictSlack = 1e-12;

/// L = max_n (Λ_{n+1}/λ_{n+1} − Λ_n/λ_n) over the section (0 when N = 1).
/// p > 1: holds iff L < p, bound (p/(p−L))^p. p < 0: always holds with that bound.
[[nodiscard]] ConditionReport cartlidge(const WeightSequence& w, const ExponentPair& e);

/// Per-n test of Λ_{n+1}/λ_{n+1} ≤ Λ_n/λ_n (1 − Lλ_n/(pΛ_n))^(1−p) + L/p for
/// n ≤ N−1. Requires 0 < L < p when p > 1 and L > 0 when p < 0.
[[nodiscard]] ConditionReport gao_condition(const WeightSequence& w, const ExponentPair& e, double L);

enum class DeterminationForm { u_form, l_form };

/// u_form: 1/Λ_k ≥ U (1/λ_k − 1/λ_{k+1}); l_form: (1 − L/p)^p ≥ Λ_k (1/λ_k − 1/λ_{k+1}),
/// for 1 ≤ k ≤ N−1. When it holds the norm is determined on decreasing
/// sequences (p > 1) or on an increasing sequence (p < 0).
[[nodiscard]] ConditionReport decreasing_determination(const WeightSequence& w, const ExponentPair& e,
                                                       double bound, DeterminationForm form);

/// min_n (Λ_{n+1}/λ_{n+1} − Λ_n/λ_n); +∞ for N = 1.
[[nodiscard]] double inf_difference(const WeightSequence& w);

/// 1/λ_1 ≥ μ (1/λ_1 − 1/λ_2) for the supplied μ = ||A||^p. The report carries
/// `convex_profile` (sufficiency of the condition) in its extras.
[[nodiscard]] ConditionReport necessary_condition(const WeightSequence& w, double mu);

/// e^(λ_1/λ_2)(1 − L) < 1 together with concavity of Λ_n/λ_n. Throws
/// InvalidArgument when the numerical estimate of lim Λ_n/(nλ_n) differs from
/// L by more than 1e-2.
[[nodiscard]] ConditionReport concave_limit_condition(const WeightSequence& w, double L);

/// Extrapolated estimate of lim Λ_n/(nλ_n) from the section.
[[nodiscard]] double limit_ratio_estimate(const WeightSequence& w);

/// True when every row of the matrix is nonincreasing, i.e. λ is nonincreasing.
[[nodiscard]] bool rows_decreasing(const WeightSequence& w);

/// Λ_n/λ_n ≤ Λ'_n/λ'_n for all n, plus the implied Λ_k/Λ_n ≤ Λ'_k/Λ'_n for k ≤ n
/// (every pair when N ≤ 200, a deterministic sample beyond).
[[nodiscard]] ConditionReport compare_matrices(const WeightSequence& w, const WeightSequence& w2);

/// Conclusion of the majorization lemma: Σ u_i a_i ≤ Σ v_i a_i for decreasing a,
/// ≥ for increasing a. Throws PrefixHypothesisError when the prefix hypotheses
/// fail and InvalidArgument when a is not monotone.
[[nodiscard]] bool majorization_check(std::span<const double> u, std::span<const double> v,
                                      std::span<const double> a);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Σ A_n^p ≥ p/(p−L) Σ a_n A_n^(p−1) for p < 0 and positive a.
[[nodiscard]] InequalityCheck negative_p_cartlidge_inequality(const WeightSequence& w, const ExponentPair& e,
                                                              std::span<const double> a, double L);

}  // namespace hardylab
