#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hardylab/conditions.hpp"
#include "hardylab/inequalities.hpp"
#include "hardylab/norm_solver.hpp"
#include "hardylab/schur.hpp"
#include "hardylab/sequences.hpp"

namespace hardylab {

using nlohmann::json;

// Non-finite doubles become JSON null.
void to_json(json& j, const GeneratorSpec& g);
void from_json(const json& j, GeneratorSpec& g);
void to_json(json& j, const NormResult& r);
void to_json(json& j, const ConditionReport& r);
void to_json(json& j, const SchurReport& r);
void to_json(json& j, const RowSumEstimate& r);
void to_json(json& j, const CarlemanProbe& r);
void to_json(json& j, const BlissCheck& r);
void to_json(json& j, const InequalityVerdict& r);
void to_json(json& j, const MeanPowerFamilyResult& r);
void to_json(json& j, const DualityCheck& r);

/// {variant, alpha, p, n} for generated certificates, or the explicit entries,
/// c, d, U1, U2 when the certificate is small enough (N ≤ 64) to list.
[[nodiscard]] json describe_certificate(const SchurCertificate& cert);

/// Shortest round-trip form with 17 significant digits; "nan", "inf", "-inf"
/// for non-finite values.
[[nodiscard]] std::string format_double(double x);

[[nodiscard]] json finite_or_null(double x);

/// Joins fields with commas, quoting any field that contains a comma, quote or newline.
[[nodiscard]] std::string csv_line(const std::vector<std::string>& fields);

}  // namespace hardylab
