#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hardylab/sequences.hpp"

namespace hardylab {

enum class MonotoneRestriction { none, decreasing, increasing };

[[nodiscard]] std::string to_string(MonotoneRestriction r);
[[nodiscard]] MonotoneRestriction monotone_restriction_from_string(const std::string& name);

struct SolverOptions {
  double tol = 1e-12;  ///< relative change in μ between sweeps
  std::size_t max_iter = 100000;
  std::size_t restarts = 64;
  std::uint64_t seed = 1;
  MonotoneRestriction monotone_restriction = MonotoneRestriction::none;
  double kkt_tol = 1e-10;  ///< bound on the scale-free stationarity residual

  void validate() const;
};

/// Finite-section norm of a weighted mean matrix.
///   p > 1: mu = μ_{p,N} = max Σ A_n^p over Σ a_n^p = 1, norm = mu^(1/p).
///   p < 0: mu = norm = sup Σ (Σ λ_k a_k^(1/p)/Λ_n)^p over the probability simplex.
struct NormResult {
  double mu = 0.0;
  double norm = 0.0;
  std::vector<double> maximizer;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// (A·a)_n = Σ_{k≤n} λ_k a_k / Λ_n.
[[nodiscard]] std::vector<double> apply_weighted_mean(const WeightSequence& w, std::span<const double> a);

/// Stationarity residual of the maximizer system
///   μ (a_k^(p−1)/λ_k − a_{k+1}^(p−1)/λ_{k+1}) = A_k^(p−1)/Λ_k,  k < N,
///   μ a_N^(p−1)/λ_N = A_N^(p−1)/Λ_N,
/// as the largest absolute equation error divided by max_k μ a_k^(p−1)/λ_k.
/// The result is invariant under scaling of `a`. Requires p > 1 and a_k > 0.
[[nodiscard]] double kkt_residual(const WeightSequence& w, const ExponentPair& e, std::span<const double> a,
                                  double mu);

/// Alternating nonlinear power iteration a ← normalize(Φ_q(Aᵀ Φ_p(A a))), started
/// from the uniform vector. With a monotone restriction every iterate is projected
/// onto the monotone cone and the result is a lower bound for the restricted sup.
[[nodiscard]] NormResult operator_norm(const WeightSequence& w, const ExponentPair& e,
                                       const SolverOptions& opts = {});

/// Left side of Σ (Σ λ_k a_k^(1/p)/Λ_n)^p for p < 0; zero when any a_k is zero.
[[nodiscard]] double negative_p_objective(const WeightSequence& w, const ExponentPair& e,
                                          std::span<const double> a);

/// Largest |a_k ∂_k F / F / a_k − 1| of the p < 0 objective at `a` (simplex
/// stationarity; zero at an interior maximizer).
[[nodiscard]] double negative_p_kkt_residual(const WeightSequence& w, const ExponentPair& e,
                                             std::span<const double> a);

/// Supremum of the p < 0 problem over the probability simplex. Runs the same
/// fixed-point iteration as operator_norm in the variables b = a^(1/p) that the
/// matrix acts on, from the uniform point and up to three random points. The
/// objective is concave in a, so all starts agree; mirror ascent on the simplex
/// is the fallback when the iteration stalls. A monotone restriction applies to b.
[[nodiscard]] NormResult norm_negative_p(const WeightSequence& w, const ExponentPair& e,
                                         const SolverOptions& opts = {});

/// The sequence the matrix is applied to: a itself for p > 1, a^(1/p) for p < 0.
/// Monotonicity statements about p < 0 maximizers refer to this sequence.
[[nodiscard]] std::vector<double> matrix_input_sequence(std::span<const double> a, const ExponentPair& e);

inline constexpr std::size_t kBruteForceMaxN = 6;

/// Independent oracle for N ≤ 6: dense matrix, multi-start gradient ascent in
/// log-coordinates plus a grid pass for N ≤ 3. Returns the norm (p > 1) or the
/// supremum (p < 0), on the same scale as NormResult::norm.
[[nodiscard]] double brute_force_norm(const WeightSequence& w, const ExponentPair& e,
                                      const SolverOptions& opts = {});

enum class SequenceShape { decreasing, increasing, neither };

[[nodiscard]] std::string to_string(SequenceShape s);

/// Monotonicity of `a` after normalizing by its largest entry; adjacent
/// entries may move against the trend by at most `tol`. Constant sequences
/// report decreasing.
[[nodiscard]] SequenceShape maximizer_shape(std::span<const double> a, double tol = 1e-9);

/// Euclidean projection onto the nonincreasing (or nondecreasing) cone by
/// pool-adjacent-violators. `none` returns the input.
[[nodiscard]] std::vector<double> monotone_projection(std::span<const double> a, MonotoneRestriction r);

}  // namespace hardylab
