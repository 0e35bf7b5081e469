#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/conditions.hpp"
#include "hardylab/sequences.hpp"

namespace hardylab {

enum class CertificateVariant { bennett, improved, kaluza_szego, explicit_entries };

[[nodiscard]] std::string to_string(CertificateVariant v);
[[nodiscard]] CertificateVariant certificate_variant_from_string(const std::string& name);

/// Lower-triangular nonnegative matrix (α_{j,i}) with auxiliary sequences c, d and
/// constants U1, U2 for Schur's test:
///   Σ_{i≤j} α_{j,i} c_i^(1/p) ≤ U1 d_j^(1/p),   Σ_{j≥i} α_{j,i} d_j^(1/q) ≤ U2 c_i^(1/q).
/// Entries are either separable, α_{j,i} = f_i g_j, which makes both families
/// O(N) prefix/suffix sums, or given by an entry function (O(N²) to verify).
/// Indices are 0-based in storage and 1-based in reports.
struct SchurCertificate {
  std::size_t n = 0;
  std::vector<double> f;
  std::vector<double> g;
  std::function<double(std::size_t j, std::size_t i)> entry_fn;
  std::vector<double> c;
  std::vector<double> d;
  double u1 = 1.0;
  double u2 = 1.0;
  CertificateVariant variant = CertificateVariant::explicit_entries;
  double alpha = 0.0;
  double p = 2.0;

  [[nodiscard]] bool separable() const { return !f.empty(); }
  /// α_{j,i} for 0-based i ≤ j; zero above the diagonal.
  [[nodiscard]] double entry(std::size_t j, std::size_t i) const;
  /// Certificate from a dense lower-triangular matrix given row by row.
  static SchurCertificate from_dense(std::vector<std::vector<double>> rows, std::vector<double> c,
                                     std::vector<double> d, double u1, double u2);
};

/// Slacks are relative excesses LHS/RHS − 1: positive means the inequality is
/// violated. Worst indices are 1-based.
struct SchurReport {
  bool holds = false;
  double bound = 0.0;  ///< U1^(1/q) U2^(1/p), a bound on the l^p norm
  double worst_row_slack = 0.0;
  double worst_col_slack = 0.0;
  std::size_t worst_row_index = 0;
  std::size_t worst_col_index = 0;
};

inline constexpr double kSchurSlack = 1e-12;

/// Checks both inequality families for every row and column.
[[nodiscard]] SchurReport verify_schur(const SchurCertificate& cert, const ExponentPair& e);

/// bennett:  α_{j,i} = α I1_i^(1/p) I0_i^(1/q) / j^α, c_i = I0_i/I1_i, d_j = 1/j,
///           where I1_i = ∫_{i−1}^i x^(α−1/p), I0_i = ∫_{i−1}^i x^(α−1/p−1); needs αp > 1.
/// improved: α_{j,i} = α (i−1/2)^((α−1/p)/p) I0_i^(1/q) / j^α,
///           c_i = (i−1/2)^(−(α−1/p)) I0_i, d_j = 1/j; needs 1 ≤ α ≤ 1 + 1/p.
/// Both use U1 = U2 = αp/(αp−1).
[[nodiscard]] SchurCertificate build_certificate(CertificateVariant variant, double alpha, const ExponentPair& e,
                                                 std::size_t n);

/// ∫_{i−1}^{i} x^s dx for i ≥ 1 (s > −1 when i = 1).
[[nodiscard]] double power_integral(std::size_t i, double s);

/// ∫_a^b x^s dx for 0 < a < b.
[[nodiscard]] double power_integral(double a, double b, double s);

struct RowSumEstimate {
  double value = 0.0;
  double bound = 0.0;
  bool holds = false;
  /// improved only: j^(−α−1/q) ≤ ∫_{j−1/2}^{j+1/2} x^(−α−1/q) dx for every j in i..N.
  std::optional<bool> hadamard_holds;
};

/// Column sum of the certificate reduced to its scalar form:
///   bennett:  I1_i Σ_{j=i}^N j^(−α−1/q) ≤ 1/(α − 1/p)
///   improved: α (i−1/2)^(α−1+1/q) Σ_{j=i}^N j^(−α−1/q) ≤ αp/(αp−1)
/// Tail sums run from j = N down with compensated summation.
[[nodiscard]] RowSumEstimate row_sum_estimate(CertificateVariant variant, double alpha, const ExponentPair& e,
                                              std::size_t i, std::size_t n);

/// Kaluza–Szegő auxiliary data: positive w with w_n^(p−1)/λ_n^p nonincreasing.
struct AuxSequence {
  std::vector<double> w;
  double u2 = 1.0;
};

/// Strict per-n test W_n^(p−1) < U2 Λ_n^p (w_n^(p−1)/λ_n^p − w_{n+1}^(p−1)/λ_{n+1}^p)
/// for n ≤ N−1 (as LHS < RHS (1 − 1e-12)), plus a direct check of
///   Σ_{j=i}^N λ_i W_j^(p−1)/Λ_j^p ≤ U2 (w_i/λ_i)^(p−1)   for every i.
/// implied_bound is U2, a bound on μ = ||A||^p. Throws InvalidArgument when the
/// monotonicity of w^(p−1)/λ^p fails.
[[nodiscard]] ConditionReport kaluza_szego_check(const WeightSequence& w, const ExponentPair& e,
                                                 const AuxSequence& aux);

/// The Schur certificate equivalent to the Kaluza–Szegő data: α_{j,i} = λ_i/Λ_j,
/// c_i = (w_i/λ_i)^p, d_j = (W_j/Λ_j)^p, U1 = 1.
[[nodiscard]] SchurCertificate kaluza_szego_certificate(const WeightSequence& w, const ExponentPair& e,
                                                        const AuxSequence& aux);

/// The three terms of i^α − (i−1)^α ≤ α(i−1/2)^(α−1) ≤ α(i−1/2)^((α−1/p)/p) I0_i^(1/q).
struct MeanChain {
  double difference = 0.0;
  double midpoint = 0.0;
  double certificate = 0.0;
};

[[nodiscard]] MeanChain mean_chain_terms(double alpha, const ExponentPair& e, std::size_t i);

}  // namespace hardylab
