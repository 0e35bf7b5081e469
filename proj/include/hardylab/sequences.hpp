#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hardylab/errors.hpp"

namespace hardylab {

/// Hölder pair (p, q) with 1/p + 1/q = 1. Only p > 1 and p < 0 are admitted;
/// q is always derived from p.
class ExponentPair {
 public:
  static ExponentPair from_p(double p);

  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double q() const { return q_; }
  [[nodiscard]] bool negative() const { return p_ < 0.0; }

 private:
  ExponentPair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

/// Generator weights λ_1..λ_N of a weighted mean matrix with entries
/// λ_k/Λ_n (k ≤ n), together with the cached prefix sums Λ_n.
/// Indices in the accessors are 0-based; λ_1 is `lambda(0)`.
class WeightSequence {
 public:
  explicit WeightSequence(std::vector<double> lambdas);

  [[nodiscard]] std::size_t size() const { return lambdas_.size(); }
  [[nodiscard]] std::span<const double> lambdas() const { return lambdas_; }
  [[nodiscard]] std::span<const double> prefix() const { return prefix_; }
  [[nodiscard]] double lambda(std::size_t i) const { return lambdas_[i]; }
  [[nodiscard]] double big_lambda(std::size_t i) const { return prefix_[i]; }
  /// Λ_n/λ_n.
  [[nodiscard]] double ratio(std::size_t i) const { return prefix_[i] / lambdas_[i]; }

  /// The first `n` weights.
  [[nodiscard]] WeightSequence section(std::size_t n) const;

 private:
  std::vector<double> lambdas_;
  std::vector<double> prefix_;
};

enum class GeneratorKind { constant, power, diff_power, mean_power, reference_prime, explicit_values };

/// Recipe for a weight sequence.
///   power(α):         λ_n = n^α
///   diff_power(α):    λ_n = n^α − (n−1)^α
///   mean_power(α, β): λ_n = L_β(n, n−1)^(α−1), with L_β(1, 0) taken as the limit
///   reference_prime(α): λ_1 = 1 and Λ_n/λ_n = (n + α/2)/α for n ≥ 2
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::constant;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t n = 1;
  std::vector<double> values;

  static GeneratorSpec constant(std::size_t n);
  static GeneratorSpec power(double alpha, std::size_t n);
  static GeneratorSpec diff_power(double alpha, std::size_t n);
  static GeneratorSpec mean_power(double alpha, double beta, std::size_t n);
  static GeneratorSpec reference_prime(double alpha, std::size_t n);
  static GeneratorSpec explicit_values(std::vector<double> values);
};

[[nodiscard]] std::string to_string(GeneratorKind kind);
[[nodiscard]] GeneratorKind generator_kind_from_string(const std::string& name);

[[nodiscard]] WeightSequence make_weights(const GeneratorSpec& spec);

/// Builds the unique weight sequence with λ_1 = 1 and the given ratio profile
/// Λ_n/λ_n. `ratios[0]` must be 1 and every later entry must exceed 1.
[[nodiscard]] WeightSequence weights_from_ratios(std::span<const double> ratios);

/// The two-variable mean L_r(a, b): ((a^r − b^r)/(r(a − b)))^(1/(r−1)), with the
/// logarithmic mean at r = 0, the identric mean at r = 1 and L_r(a, a) = a.
/// Strictly increasing in r when a ≠ b.
[[nodiscard]] double generalized_mean(double a, double b, double r);

/// L_r(a, 0) for r > 0, the continuous extension used by the first weight of
/// the mean_power generator.
[[nodiscard]] double generalized_mean_at_zero(double a, double r);

enum class ProfileShape { convex, concave, affine, neither };

[[nodiscard]] std::string to_string(ProfileShape shape);

struct RatioProfile {
  std::vector<double> ratios;            ///< Λ_n/λ_n
  std::vector<double> first_difference;  ///< ratios[n+1] − ratios[n]
  ProfileShape shape = ProfileShape::affine;
};

inline constexpr double kShapeTolerance = 1e-10;

[[nodiscard]] RatioProfile ratio_profile(const WeightSequence& w, double tolerance = kShapeTolerance);

}  // namespace hardylab
