#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardylab/norm_solver.hpp"
#include "hardylab/sequences.hpp"

namespace hardylab {

/// Σ_n (Σ_{k≤n} λ_k a_k/Λ_n)^p / Σ_n a_n^p for p > 1 and nonnegative, nonzero a.
[[nodiscard]] double hardy_ratio(const WeightSequence& w, const ExponentPair& e, std::span<const double> a);

struct WorstCase {
  std::vector<double> a;
  double ratio = 0.0;  ///< on the hardy_ratio scale: μ_{p,N} for p > 1, the sup itself for p < 0
  NormResult solver;
};

/// Maximizing sequence from the norm solver, honouring opts.monotone_restriction.
[[nodiscard]] WorstCase worst_case_search(const WeightSequence& w, const ExponentPair& e,
                                          const SolverOptions& opts = {});

/// Σ_n exp(Σ_{k≤n} λ_k log a_k / Λ_n) / Σ_n a_n for positive a.
[[nodiscard]] double carleman_ratio(const WeightSequence& w, std::span<const double> a);

struct CarlemanProbe {
  double estimate = 0.0;  ///< best ratio found; a lower bound for the section constant
  double target = 0.0;    ///< e^(1/(α+1))
  bool within_target = false;
  std::vector<double> maximizer;
  double stationarity = 0.0;
  std::size_t iterations = 0;
};

/// Multi-start search for max carleman_ratio with λ_k = k^α. The objective is
/// concave on the simplex, so every start climbs to the same value; restarts
/// guard the numerics rather than local maxima.
[[nodiscard]] CarlemanProbe carleman_probe(double alpha, std::size_t n, const SolverOptions& opts = {});

/// r > 1 and 0 < s < r − 1, with p = r/(s+1) and (α+1)p > 1.
struct BlissParams {
  double r = 2.0;
  double s = 0.5;
  double alpha = 0.0;

  [[nodiscard]] double p() const { return r / (s + 1.0); }
  [[nodiscard]] double q() const { return p() / (p() - 1.0); }
  void validate() const;
};

/// K = 1/((r−s−1)(1+αq)^(r−s)) · (sΓ(r/s)/(Γ(1/s)Γ((r−1)/s)))^s, evaluated with log-Gamma.
[[nodiscard]] double bliss_constant(const BlissParams& params);

/// s α^r K_{r, s−1, α−1}, the constant of the discrete inequality below.
[[nodiscard]] double discrete_bliss_constant(double r, double s, double alpha);

struct BlissCheck {
  bool hypothesis = false;
  std::optional<std::size_t> hypothesis_failure;  ///< 1-based m
  std::optional<bool> conclusion;                  ///< only evaluated when the hypothesis holds
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  ///< (rhs − lhs)/rhs
};

/// Hypothesis Σ_{n≤m} u_n V_n^(αr) ≤ V_m^s for every m; conclusion
///   Σ u_n (Σ_{k≤n} (V_k^α − V_{k−1}^α) a_k)^r ≤ s α^r K_{r,s−1,α−1} (Σ v_n a_n^(r/s))^s.
/// Requires r > s > 1 and s/r < α ≤ 1.
[[nodiscard]] BlissCheck verify_discrete_bliss(std::span<const double> u, std::span<const double> v,
                                               std::span<const double> a, double r, double s, double alpha);

/// e^(−(α−1)s/α)/α^(1−s) · s/(s−1) · ((s−1)/Γ(1/(s−1)))^(s−1) for s > 1, 0 < α ≤ 1.
[[nodiscard]] double carleman_type_constant(double s, double alpha);

struct InequalityVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double slack = 0.0;  ///< (rhs − lhs)/rhs
};

/// Σ (V_n^s − V_{n−1}^s) (Π_{k≤n} a_k^(V_k^α − V_{k−1}^α))^(s/V_n^α) ≤ C(s, α) (Σ v_n a_n)^s.
[[nodiscard]] InequalityVerdict verify_carleman_type(std::span<const double> v, std::span<const double> a, double s,
                                                     double alpha);

enum class Verdict { pass, fail, unproven };

[[nodiscard]] std::string to_string(Verdict v);

struct MeanPowerFamilyResult {
  double ratio = 0.0;
  double target = 0.0;  ///< (αp/(αp−1))^p
  bool in_window = false;
  Verdict verdict = Verdict::unproven;
};

/// hardy_ratio for the weights λ_i = L_β(i, i−1)^(α−1). The target is proven for
/// p > 1, 1 ≤ α ≤ 1 + 1/p, α ≤ β ≤ 2, and for β = α; elsewhere the verdict is
/// `unproven` and only the ratio is meaningful.
[[nodiscard]] MeanPowerFamilyResult verify_mean_power_family(double alpha, double beta, const ExponentPair& e,
                                              std::span<const double> a);

inline constexpr std::size_t kDualityMaxN = 1000;

struct DualityCheck {
  double bilinear = 0.0;
  double bound = 0.0;
  bool holds = false;
  double slack = 0.0;                ///< (bound − bilinear)/bound
  std::optional<double> dual_form;  ///< Σ_n w_n² (Σ_{i≥n} x_i/i^α)², only when x = y
};

/// Σ_{i,j} α² min(i,j)^(2α−1)/((2α−1) i^α j^α) x_i y_j ≤ α²/(α−1/2)² ||x||_2 ||y||_2
/// for 1 ≤ α ≤ 3/2, evaluated as a dense double sum (N ≤ 1000).
[[nodiscard]] DualityCheck duality_p2_check(double alpha, std::span<const double> x, std::span<const double> y);

}  // namespace hardylab
