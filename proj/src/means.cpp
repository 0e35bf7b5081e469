#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/sequences.hpp"

namespace hardylab {
namespace {

constexpr double kNearZeroOrder = 1e-6;
constexpr double kNearOneOrder = 1e-6;
constexpr double kNearEqual = 1e-8;

// log(expm1(x)/x), finite for every x.
double log_expm1_ratio(double x) {
  if (std::abs(x) < 1e-10) return x / 2.0 + x * x / 24.0;
  if (x > 0.0) return x + std::log(-std::expm1(-x)) - std::log(x);
  return std::log(-std::expm1(x)) - std::log(-x);
}

// log(L_r(1, t)) for 0 < t < 1, given log_t = log t and gap = 1 − t.
double log_unit_mean(double t, double log_t, double gap, double r) {
  const double log_gap = std::log(gap);
  if (std::abs(r - 1.0) < kNearOneOrder) {
    // Second-order expansion of log((1 − t^r)/(r(1 − t)))/(r − 1) about r = 1.
    const double slope = -t * log_t / gap - 1.0;
    const double curvature = 1.0 - log_t * log_t * t / (gap * gap);
    return slope + 0.5 * (r - 1.0) * curvature;
  }
  const double x = r * log_t;
  double log_numerator;  // log((1 − t^r)/r)
  if (std::abs(r) < kNearZeroOrder) {
    log_numerator = std::log(-log_t) + x / 2.0 + x * x / 24.0;
  } else {
    log_numerator = std::log(-log_t) + log_expm1_ratio(x);
  }
  return (log_numerator - log_gap) / (r - 1.0);
}

}  // namespace

double generalized_mean(double a, double b, double r) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("generalized_mean: arguments must be positive and finite");
  }
  if (!std::isfinite(r)) throw InvalidArgument("generalized_mean: order must be finite");

  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  const double gap = hi - lo;
  if (gap <= kNearEqual * hi) {
    // L_r(m + h, m − h) = m (1 + (r − 2) h²/(6 m²) + O(h⁴)).
    const double mid = 0.5 * (hi + lo);
    const double h = 0.5 * gap / mid;
    return mid * (1.0 + (r - 2.0) / 6.0 * h * h);
  }
  const double d = gap / hi;
  const double t = lo / hi;
  const double log_t = d <= 0.5 ? std::log1p(-d) : std::log(lo) - std::log(hi);
  return hi * std::exp(log_unit_mean(t, log_t, d, r));
}

double generalized_mean_at_zero(double a, double r) {
  if (!(a > 0.0)) throw InvalidArgument("generalized_mean_at_zero: a must be positive");
  if (!(r > 0.0)) throw InvalidArgument("generalized_mean_at_zero: order must be positive");
  // L_r(a, 0) = a · r^(−1/(r−1)), which tends to a/e at r = 1.
  const double delta = r - 1.0;
  const double exponent = std::abs(delta) < kNearOneOrder ? -(1.0 - delta / 2.0)
                                                          : -std::log1p(delta) / delta;
  return a * std::exp(exponent);
}

}  // namespace hardylab
