#include "hardylab/sequences.hpp"

#include <cmath>
#include <sstream>

#include "hardylab/compensated_sum.hpp"

namespace hardylab {

NonPositiveWeight::NonPositiveWeight(std::size_t index, double value)
    : InvalidArgument([&] {
        std::ostringstream os;
        os << "weight lambda_" << index << " = " << value << " is not positive";
        return os.str();
      }()),
      index_(index),
      value_(value) {}

PrefixHypothesisError::PrefixHypothesisError(std::size_t index, const std::string& what)
    : std::domain_error(what), index_(index) {}

ExponentPair ExponentPair::from_p(double p) {
  if (!std::isfinite(p) || !(p > 1.0 || p < 0.0)) {
    throw InvalidArgument("exponent p must satisfy p > 1 or p < 0");
  }
  return ExponentPair(p, p / (p - 1.0));
}

WeightSequence::WeightSequence(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw InvalidArgument("weight sequence must be non-empty");
  prefix_.reserve(lambdas_.size());
  CompensatedSum running;
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    const double v = lambdas_[i];
    if (!(v > 0.0) || !std::isfinite(v)) throw NonPositiveWeight(i + 1, v);
    running += v;
    prefix_.push_back(running.value());
  }
}

WeightSequence WeightSequence::section(std::size_t n) const {
  if (n == 0 || n > size()) throw InvalidArgument("section length out of range");
  return WeightSequence(std::vector<double>(lambdas_.begin(), lambdas_.begin() + n));
}

GeneratorSpec GeneratorSpec::constant(std::size_t n) { return {GeneratorKind::constant, 0.0, 0.0, n, {}}; }
GeneratorSpec GeneratorSpec::power(double alpha, std::size_t n) { return {GeneratorKind::power, alpha, 0.0, n, {}}; }
GeneratorSpec GeneratorSpec::diff_power(double alpha, std::size_t n) {
  return {GeneratorKind::diff_power, alpha, 0.0, n, {}};
}
GeneratorSpec GeneratorSpec::mean_power(double alpha, double beta, std::size_t n) {
  return {GeneratorKind::mean_power, alpha, beta, n, {}};
}
GeneratorSpec GeneratorSpec::reference_prime(double alpha, std::size_t n) {
  return {GeneratorKind::reference_prime, alpha, 0.0, n, {}};
}
GeneratorSpec GeneratorSpec::explicit_values(std::vector<double> values) {
  const std::size_t n = values.size();
  return {GeneratorKind::explicit_values, 0.0, 0.0, n, std::move(values)};
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::constant: return "constant";
    case GeneratorKind::power: return "power";
    case GeneratorKind::diff_power: return "diff_power";
    case GeneratorKind::mean_power: return "mean_power";
    case GeneratorKind::reference_prime: return "reference_prime";
    case GeneratorKind::explicit_values: return "explicit";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  if (name == "constant") return GeneratorKind::constant;
  if (name == "power") return GeneratorKind::power;
  if (name == "diff_power") return GeneratorKind::diff_power;
  if (name == "mean_power") return GeneratorKind::mean_power;
  if (name == "reference_prime") return GeneratorKind::reference_prime;
  if (name == "explicit") return GeneratorKind::explicit_values;
  throw InvalidArgument("unknown generator kind '" + name + "'");
}

WeightSequence weights_from_ratios(std::span<const double> ratios) {
  if (ratios.empty()) throw InvalidArgument("ratio profile must be non-empty");
  if (ratios[0] != 1.0) throw InvalidArgument("ratio profile must start at 1");
  std::vector<double> lambdas{1.0};
  lambdas.reserve(ratios.size());
  CompensatedSum running(1.0);
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    // Λ_n = ρ_n λ_n and Λ_n = Λ_{n−1} + λ_n give λ_n = Λ_{n−1}/(ρ_n − 1).
    const double lambda = running.value() / (ratios[i] - 1.0);
    if (!(ratios[i] > 1.0)) throw NonPositiveWeight(i + 1, lambda);
    lambdas.push_back(lambda);
    running += lambda;
  }
  return WeightSequence(std::move(lambdas));
}

WeightSequence make_weights(const GeneratorSpec& spec) {
  const std::size_t n = spec.kind == GeneratorKind::explicit_values ? spec.values.size() : spec.n;
  if (n == 0) throw InvalidArgument("generator length must be at least 1");
  if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta)) {
    throw InvalidArgument("generator parameters must be finite");
  }

  std::vector<double> lambdas(n);
  switch (spec.kind) {
    case GeneratorKind::constant:
      std::fill(lambdas.begin(), lambdas.end(), 1.0);
      break;
    case GeneratorKind::power:
      for (std::size_t i = 0; i < n; ++i) lambdas[i] = std::pow(double(i + 1), spec.alpha);
      break;
    case GeneratorKind::diff_power:
      lambdas[0] = 1.0;
      for (std::size_t i = 1; i < n; ++i) {
        const double k = double(i + 1);
        lambdas[i] = -std::pow(k, spec.alpha) * std::expm1(spec.alpha * std::log1p(-1.0 / k));
      }
      break;
    case GeneratorKind::mean_power:
      if (!(spec.beta >= spec.alpha && spec.alpha >= 1.0)) {
        throw InvalidArgument("mean_power requires beta >= alpha >= 1");
      }
      lambdas[0] = std::pow(generalized_mean_at_zero(1.0, spec.beta), spec.alpha - 1.0);
      for (std::size_t i = 1; i < n; ++i) {
        lambdas[i] = std::pow(generalized_mean(double(i + 1), double(i), spec.beta), spec.alpha - 1.0);
      }
      break;
    case GeneratorKind::reference_prime: {
      if (!(spec.alpha > 1.0 && spec.alpha < 2.0)) {
        throw InvalidArgument("reference_prime requires 1 < alpha < 2");
      }
      std::vector<double> ratios(n);
      ratios[0] = 1.0;
      for (std::size_t i = 1; i < n; ++i) ratios[i] = (double(i + 1) + spec.alpha / 2.0) / spec.alpha;
      return weights_from_ratios(ratios);
    }
    case GeneratorKind::explicit_values:
      lambdas = spec.values;
      break;
  }
  return WeightSequence(std::move(lambdas));
}

std::string to_string(ProfileShape shape) {
  switch (shape) {
    case ProfileShape::convex: return "convex";
    case ProfileShape::concave: return "concave";
    case ProfileShape::affine: return "affine";
    case ProfileShape::neither: return "neither";
  }
  return "unknown";
}

RatioProfile ratio_profile(const WeightSequence& w, double tolerance) {
  RatioProfile out;
  const std::size_t n = w.size();
  out.ratios.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.ratios[i] = w.ratio(i);
  if (n >= 2) {
    out.first_difference.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) out.first_difference[i] = out.ratios[i + 1] - out.ratios[i];
  }
  bool up = false;
  bool down = false;
  for (std::size_t i = 0; i + 1 < out.first_difference.size(); ++i) {
    const double second = out.first_difference[i + 1] - out.first_difference[i];
    up = up || second > tolerance;
    down = down || second < -tolerance;
  }
  if (up && down) {
    out.shape = ProfileShape::neither;
  } else if (up) {
    out.shape = ProfileShape::convex;
  } else if (down) {
    out.shape = ProfileShape::concave;
  } else {
    out.shape = ProfileShape::affine;
  }
  return out;
}

}  // namespace hardylab
