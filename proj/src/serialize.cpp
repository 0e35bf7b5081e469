#include "hardylab/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace hardylab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return finite_or_null(*v);
  } else {
    return *v;
  }
}

json number_array(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(finite_or_null(x));
  return out;
}

}  // namespace

void to_json(json& j, const GeneratorSpec& g) {
  j = json{{"kind", to_string(g.kind)}, {"n", g.n}};
  switch (g.kind) {
    case GeneratorKind::power:
    case GeneratorKind::diff_power:
    case GeneratorKind::reference_prime: j["alpha"] = g.alpha; break;
    case GeneratorKind::mean_power:
      j["alpha"] = g.alpha;
      j["beta"] = g.beta;
      break;
    case GeneratorKind::explicit_values: j["values"] = g.values; break;
    case GeneratorKind::constant: break;
  }
}

void from_json(const json& j, GeneratorSpec& g) {
  if (!j.is_object()) throw InvalidArgument("generator must be a JSON object");
  g = GeneratorSpec{};
  g.kind = generator_kind_from_string(j.at("kind").get<std::string>());
  g.alpha = j.value("alpha", 0.0);
  g.beta = j.value("beta", g.alpha);
  if (j.contains("values")) g.values = j.at("values").get<std::vector<double>>();
  g.n = j.value("n", g.kind == GeneratorKind::explicit_values ? g.values.size() : std::size_t{1});
}

void to_json(json& j, const NormResult& r) {
  j = json{{"mu", finite_or_null(r.mu)},
           {"norm", finite_or_null(r.norm)},
           {"kkt_residual", finite_or_null(r.kkt_residual)},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"maximizer", number_array(r.maximizer)}};
}

void to_json(json& j, const ConditionReport& r) {
  j = json{{"condition", to_string(r.id)},
           {"holds", r.holds},
           {"first_failure_index", optional_json(r.first_failure_index)},
           {"constant", optional_json(r.constant)},
           {"implied_bound", optional_json(r.implied_bound)},
           {"section_length", r.section_length},
           {"margin", optional_json(r.margin)}};
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = finite_or_null(v);
  j["extras"] = std::move(extras);
}

void to_json(json& j, const SchurReport& r) {
  j = json{{"holds", r.holds},
           {"bound", finite_or_null(r.bound)},
           {"worst_row_slack", finite_or_null(r.worst_row_slack)},
           {"worst_row_index", r.worst_row_index},
           {"worst_col_slack", finite_or_null(r.worst_col_slack)},
           {"worst_col_index", r.worst_col_index}};
}

void to_json(json& j, const RowSumEstimate& r) {
  j = json{{"value", finite_or_null(r.value)},
           {"bound", finite_or_null(r.bound)},
           {"holds", r.holds},
           {"hadamard_holds", optional_json(r.hadamard_holds)}};
}

void to_json(json& j, const CarlemanProbe& r) {
  j = json{{"estimate", finite_or_null(r.estimate)},
           {"target", finite_or_null(r.target)},
           {"within_target", r.within_target},
           {"stationarity", finite_or_null(r.stationarity)},
           {"iterations", r.iterations},
           {"maximizer", number_array(r.maximizer)}};
}

void to_json(json& j, const BlissCheck& r) {
  j = json{{"hypothesis", r.hypothesis},
           {"hypothesis_failure", optional_json(r.hypothesis_failure)},
           {"conclusion", optional_json(r.conclusion)}};
  if (r.conclusion) {
    j["lhs"] = finite_or_null(r.lhs);
    j["rhs"] = finite_or_null(r.rhs);
    j["slack"] = finite_or_null(r.slack);
  }
}

void to_json(json& j, const InequalityVerdict& r) {
  j = json{{"lhs", finite_or_null(r.lhs)},
           {"rhs", finite_or_null(r.rhs)},
           {"holds", r.holds},
           {"slack", finite_or_null(r.slack)}};
}

void to_json(json& j, const MeanPowerFamilyResult& r) {
  j = json{{"ratio", finite_or_null(r.ratio)},
           {"target", finite_or_null(r.target)},
           {"in_window", r.in_window},
           {"verdict", to_string(r.verdict)}};
}

void to_json(json& j, const DualityCheck& r) {
  j = json{{"bilinear", finite_or_null(r.bilinear)},
           {"bound", finite_or_null(r.bound)},
           {"holds", r.holds},
           {"slack", finite_or_null(r.slack)},
           {"dual_form", optional_json(r.dual_form)}};
}

json describe_certificate(const SchurCertificate& cert) {
  if (cert.variant == CertificateVariant::bennett || cert.variant == CertificateVariant::improved) {
    return json{{"variant", to_string(cert.variant)}, {"alpha", cert.alpha}, {"p", cert.p}, {"n", cert.n}};
  }
  json j{{"variant", to_string(cert.variant)}, {"n", cert.n}, {"U1", cert.u1}, {"U2", cert.u2}};
  if (cert.n <= 64) {
    json rows = json::array();
    for (std::size_t r = 0; r < cert.n; ++r) {
      json row = json::array();
      for (std::size_t i = 0; i <= r; ++i) row.push_back(cert.entry(r, i));
      rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    j["c"] = cert.c;
    j["d"] = cert.d;
  }
  return j;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    const std::string& f = fields[k];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  return out;
}

}  // namespace hardylab
