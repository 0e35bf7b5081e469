#include "hardylab/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hardylab/compensated_sum.hpp"

namespace hardylab {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// Runs body(begin, end) over [0, n) in contiguous blocks on up to
// hardware_concurrency threads. Small ranges stay on the calling thread.
template <class Body>
void for_blocks(std::size_t n, Body body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = n < 512 ? 1 : std::min<std::size_t>(hw, 16);
  if (workers == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t b = 0; b < n; b += chunk) pool.emplace_back(body, b, std::min(n, b + chunk));
  for (auto& t : pool) t.join();
}

struct Worst {
  double slack = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;

  void offer(double lhs, double rhs, std::size_t i) {
    const double s = lhs / rhs - 1.0;
    if (s > slack || index == 0) {
      slack = s;
      index = i;
    }
  }
};

double certificate_constant(double alpha, double p) { return alpha * p / (alpha * p - 1.0); }

void check_exponent(const ExponentPair& e) { require(!e.negative(), "Schur certificates require p > 1"); }

void check_alpha(CertificateVariant variant, double alpha, double p) {
  require(std::isfinite(alpha), "alpha must be finite");
  require(alpha * p > 1.0, "certificate requires alpha*p > 1");
  if (variant == CertificateVariant::improved) {
    require(alpha >= 1.0 && alpha <= 1.0 + 1.0 / p, "improved certificate requires 1 <= alpha <= 1 + 1/p");
  } else {
    require(variant == CertificateVariant::bennett, "build_certificate: variant must be bennett or improved");
  }
}

// Σ_{j=i}^{n} j^(−s), smallest terms first.
double tail_sum(std::size_t i, std::size_t n, double s) {
  CompensatedSum sum;
  for (std::size_t j = n; j >= i; --j) {
    sum += std::pow(double(j), -s);
    if (j == 1) break;
  }
  return sum.value();
}

}  // namespace

std::string to_string(CertificateVariant v) {
  switch (v) {
    case CertificateVariant::bennett: return "bennett";
    case CertificateVariant::improved: return "improved";
    case CertificateVariant::kaluza_szego: return "kaluza_szego";
    case CertificateVariant::explicit_entries: return "explicit";
  }
  return "unknown";
}

CertificateVariant certificate_variant_from_string(const std::string& name) {
  if (name == "bennett") return CertificateVariant::bennett;
  if (name == "improved") return CertificateVariant::improved;
  if (name == "kaluza_szego") return CertificateVariant::kaluza_szego;
  if (name == "explicit") return CertificateVariant::explicit_entries;
  throw InvalidArgument("unknown certificate variant: " + name);
}

double SchurCertificate::entry(std::size_t j, std::size_t i) const {
  if (i > j) return 0.0;
  return separable() ? f[i] * g[j] : entry_fn(j, i);
}

SchurCertificate SchurCertificate::from_dense(std::vector<std::vector<double>> rows, std::vector<double> c,
                                              std::vector<double> d, double u1, double u2) {
  SchurCertificate cert;
  cert.n = rows.size();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    require(rows[j].size() >= j + 1, "from_dense: row j needs j entries");
    for (std::size_t i = 0; i <= j; ++i) require(rows[j][i] >= 0.0, "from_dense: entries must be nonnegative");
  }
  cert.entry_fn = [rows = std::move(rows)](std::size_t j, std::size_t i) { return rows[j][i]; };
  cert.c = std::move(c);
  cert.d = std::move(d);
  cert.u1 = u1;
  cert.u2 = u2;
  return cert;
}

double power_integral(std::size_t i, double s) {
  require(i >= 1, "power_integral: i >= 1");
  const double t = s + 1.0;
  if (i == 1) {
    require(t > 0.0, "power_integral: integral over [0,1] needs s > -1");
    return 1.0 / t;
  }
  const double l = std::log1p(-1.0 / double(i));
  if (t == 0.0) return -l;
  return -std::pow(double(i), t) * std::expm1(t * l) / t;
}

double power_integral(double a, double b, double s) {
  require(a > 0.0 && b > a, "power_integral: need 0 < a < b");
  const double t = s + 1.0;
  const double l = std::log1p((a - b) / b);
  if (t == 0.0) return -l;
  return -std::pow(b, t) * std::expm1(t * l) / t;
}

SchurReport verify_schur(const SchurCertificate& cert, const ExponentPair& e) {
  check_exponent(e);
  const std::size_t n = cert.n;
  require(n >= 1, "verify_schur: empty certificate");
  require(cert.c.size() == n && cert.d.size() == n, "verify_schur: c and d must have length N");
  for (std::size_t i = 0; i < n; ++i) {
    require(cert.c[i] > 0.0 && std::isfinite(cert.c[i]), "verify_schur: c must be positive");
    require(cert.d[i] > 0.0 && std::isfinite(cert.d[i]), "verify_schur: d must be positive");
  }
  require(cert.u1 > 0.0 && cert.u2 > 0.0, "verify_schur: U1 and U2 must be positive");
  if (cert.separable()) require(cert.f.size() == n && cert.g.size() == n, "verify_schur: f and g must have length N");
  const double p = e.p(), q = e.q();

  std::vector<double> c_p(n), c_q(n), d_p(n), d_q(n);
  for (std::size_t i = 0; i < n; ++i) {
    c_p[i] = std::pow(cert.c[i], 1.0 / p);
    c_q[i] = std::pow(cert.c[i], 1.0 / q);
    d_p[i] = std::pow(cert.d[i], 1.0 / p);
    d_q[i] = std::pow(cert.d[i], 1.0 / q);
  }

  Worst row, col;
  if (cert.separable()) {
    CompensatedSum prefix;
    for (std::size_t j = 0; j < n; ++j) {
      prefix += cert.f[j] * c_p[j];
      row.offer(cert.g[j] * prefix.value(), cert.u1 * d_p[j], j + 1);
    }
    CompensatedSum suffix;
    for (std::size_t i = n; i-- > 0;) {
      suffix += cert.g[i] * d_q[i];
      col.offer(cert.f[i] * suffix.value(), cert.u2 * c_q[i], i + 1);
    }
  } else {
    std::vector<double> row_lhs(n), col_lhs(n);
    for_blocks(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        CompensatedSum s;
        for (std::size_t i = 0; i <= j; ++i) s += cert.entry_fn(j, i) * c_p[i];
        row_lhs[j] = s.value();
      }
      for (std::size_t i = begin; i < end; ++i) {
        CompensatedSum s;
        for (std::size_t j = n; j-- > i;) s += cert.entry_fn(j, i) * d_q[j];
        col_lhs[i] = s.value();
      }
    });
    for (std::size_t j = 0; j < n; ++j) row.offer(row_lhs[j], cert.u1 * d_p[j], j + 1);
    for (std::size_t i = 0; i < n; ++i) col.offer(col_lhs[i], cert.u2 * c_q[i], i + 1);
  }

  SchurReport report;
  report.worst_row_slack = row.slack;
  report.worst_row_index = row.index;
  report.worst_col_slack = col.slack;
  report.worst_col_index = col.index;
  report.holds = row.slack <= kSchurSlack && col.slack <= kSchurSlack;
  report.bound = std::pow(cert.u1, 1.0 / q) * std::pow(cert.u2, 1.0 / p);
  return report;
}

SchurCertificate build_certificate(CertificateVariant variant, double alpha, const ExponentPair& e,
                                   std::size_t n) {
  check_exponent(e);
  const double p = e.p(), q = e.q();
  check_alpha(variant, alpha, p);
  require(n >= 1, "build_certificate: N >= 1");

  SchurCertificate cert;
  cert.n = n;
  cert.variant = variant;
  cert.alpha = alpha;
  cert.p = p;
  cert.u1 = cert.u2 = certificate_constant(alpha, p);
  cert.f.resize(n);
  cert.g.resize(n);
  cert.c.resize(n);
  cert.d.resize(n);
  const double s1 = alpha - 1.0 / p;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    const double i0 = power_integral(i, s1 - 1.0);
    if (variant == CertificateVariant::bennett) {
      const double i1 = power_integral(i, s1);
      cert.f[k] = alpha * std::pow(i1, 1.0 / p) * std::pow(i0, 1.0 / q);
      cert.c[k] = i0 / i1;
    } else {
      const double mid = double(i) - 0.5;
      cert.f[k] = alpha * std::pow(mid, s1 / p) * std::pow(i0, 1.0 / q);
      cert.c[k] = std::pow(mid, -s1) * i0;
    }
    cert.g[k] = std::pow(double(i), -alpha);
    cert.d[k] = 1.0 / double(i);
  }
  return cert;
}

RowSumEstimate row_sum_estimate(CertificateVariant variant, double alpha, const ExponentPair& e, std::size_t i,
                                std::size_t n) {
  check_exponent(e);
  const double p = e.p(), q = e.q();
  check_alpha(variant, alpha, p);
  require(i >= 1 && i <= n, "row_sum_estimate: need 1 <= i <= N");
  const double s = alpha + 1.0 / q;
  const double tail = tail_sum(i, n, s);

  RowSumEstimate out;
  if (variant == CertificateVariant::bennett) {
    out.value = power_integral(i, alpha - 1.0 / p) * tail;
    out.bound = 1.0 / (alpha - 1.0 / p);
  } else {
    out.value = alpha * std::pow(double(i) - 0.5, alpha - 1.0 + 1.0 / q) * tail;
    out.bound = certificate_constant(alpha, p);
    bool ok = true;
    for (std::size_t j = i; j <= n && ok; ++j) {
      const double x = double(j);
      ok = std::pow(x, -s) <= power_integral(x - 0.5, x + 0.5, -s) * (1.0 + 1e-14);
    }
    out.hadamard_holds = ok;
  }
  out.holds = out.value <= out.bound * (1.0 + kNonStrictSlack);
  return out;
}

namespace {

void check_aux(const WeightSequence& w, const ExponentPair& e, const AuxSequence& aux) {
  check_exponent(e);
  require(aux.w.size() == w.size(), "kaluza_szego: w must have length N");
  require(aux.u2 > 0.0 && std::isfinite(aux.u2), "kaluza_szego: U2 must be positive");
  for (double v : aux.w) require(v > 0.0 && std::isfinite(v), "kaluza_szego: w must be positive");
}

// w_n^(p−1)/λ_n^p
std::vector<double> aux_profile(const WeightSequence& w, const ExponentPair& e, const AuxSequence& aux) {
  const double p = e.p();
  std::vector<double> v(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    v[k] = std::exp((p - 1.0) * std::log(aux.w[k]) - p * std::log(w.lambda(k)));
  }
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (v[k + 1] > v[k] * (1.0 + 1e-12)) {
      throw InvalidArgument("kaluza_szego: w^(p-1)/lambda^p must be nonincreasing (fails at n=" +
                            std::to_string(k + 1) + ")");
    }
  }
  return v;
}

}  // namespace

ConditionReport kaluza_szego_check(const WeightSequence& w, const ExponentPair& e, const AuxSequence& aux) {
  check_aux(w, e, aux);
  const std::vector<double> v = aux_profile(w, e, aux);
  const std::size_t n = w.size();
  const double p = e.p();

  ConditionReport r;
  r.id = ConditionId::kaluza_szego;
  r.section_length = n;
  r.constant = aux.u2;

  std::vector<double> partial(n);
  CompensatedSum W;
  for (std::size_t k = 0; k < n; ++k) {
    W += aux.w[k];
    partial[k] = W.value();
  }

  bool strict_ok = true;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double lhs = std::pow(partial[k], p - 1.0);
    const double rhs = aux.u2 * std::pow(w.big_lambda(k), p) * (v[k] - v[k + 1]);
    const double room = rhs > 0.0 ? (rhs - lhs) / rhs : -1.0;
    r.margin = r.margin ? std::min(*r.margin, room) : room;
    if (!(lhs < rhs * (1.0 - 1e-12))) {
      if (strict_ok) r.first_failure_index = k + 1;
      strict_ok = false;
    }
  }

  bool telescoped_ok = true;
  double worst = 0.0;
  CompensatedSum suffix;
  std::optional<std::size_t> telescoped_failure;
  for (std::size_t k = n; k-- > 0;) {
    suffix += std::pow(partial[k], p - 1.0) / std::pow(w.big_lambda(k), p);
    const double lhs = w.lambda(k) * suffix.value();
    const double rhs = aux.u2 * std::pow(aux.w[k] / w.lambda(k), p - 1.0);
    worst = std::max(worst, lhs / rhs);
    if (lhs > rhs * (1.0 + kNonStrictSlack)) {
      telescoped_ok = false;
      telescoped_failure = k + 1;
    }
  }
  if (!r.first_failure_index) r.first_failure_index = telescoped_failure;
  r.extras.emplace_back("per_n_holds", strict_ok ? 1.0 : 0.0);
  r.extras.emplace_back("telescoped_holds", telescoped_ok ? 1.0 : 0.0);
  r.extras.emplace_back("telescoped_worst_ratio", worst);
  r.holds = strict_ok && telescoped_ok;
  if (r.holds) r.implied_bound = aux.u2;
  return r;
}

SchurCertificate kaluza_szego_certificate(const WeightSequence& w, const ExponentPair& e, const AuxSequence& aux) {
  check_aux(w, e, aux);
  const double p = e.p();
  const std::size_t n = w.size();
  SchurCertificate cert;
  cert.n = n;
  cert.variant = CertificateVariant::kaluza_szego;
  cert.p = p;
  cert.u1 = 1.0;
  cert.u2 = aux.u2;
  cert.f.assign(w.lambdas().begin(), w.lambdas().end());
  cert.g.resize(n);
  cert.c.resize(n);
  cert.d.resize(n);
  CompensatedSum W;
  for (std::size_t k = 0; k < n; ++k) {
    W += aux.w[k];
    cert.g[k] = 1.0 / w.big_lambda(k);
    cert.c[k] = std::pow(aux.w[k] / w.lambda(k), p);
    cert.d[k] = std::pow(W.value() / w.big_lambda(k), p);
  }
  return cert;
}

MeanChain mean_chain_terms(double alpha, const ExponentPair& e, std::size_t i) {
  check_exponent(e);
  const double p = e.p(), q = e.q();
  require(alpha * p > 1.0, "mean_chain_terms: alpha*p > 1");
  require(i >= 1, "mean_chain_terms: i >= 1");
  const double x = double(i), mid = x - 0.5;
  MeanChain m;
  m.difference = i == 1 ? 1.0 : -std::pow(x, alpha) * std::expm1(alpha * std::log1p(-1.0 / x));
  m.midpoint = alpha * std::pow(mid, alpha - 1.0);
  m.certificate = alpha * std::pow(mid, (alpha - 1.0 / p) / p) * std::pow(power_integral(i, alpha - 1.0 - 1.0 / p), 1.0 / q);
  return m;
}

}  // namespace hardylab
