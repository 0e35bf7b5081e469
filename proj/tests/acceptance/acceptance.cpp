// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hardylab/conditions.hpp"
#include "hardylab/inequalities.hpp"
#include "hardylab/norm_solver.hpp"
#include "hardylab/schur.hpp"
#include "hardylab/sequences.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: ";
      if (pass) note << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void run(int id, const std::string& name, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& ex) {
    out.pass = false;
    out.note << "exception: " << ex.what() << "; ";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s) {
    out.pass = false;
    out.note << "runtime " << elapsed << " s exceeds " << time_limit_s << " s; ";
  }
  if (!out.pass) ++failures;
  std::printf("%s %d: %s [%.2f s] %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), elapsed,
              out.note.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string property_suite = argc > 1 ? argv[1] : "";
  const auto p2 = ExponentPair::from_p(2);

  run(1, "Hardy baseline, constant weights, p=2", 10.0, [&](Outcome& o) {
    double prev = 0.0;
    double at2 = 0.0;
    for (std::size_t n = 2; n <= 1024; n += 2) {
      const auto r = operator_norm(make_weights(GeneratorSpec::constant(n)), p2);
      o.require(r.converged, "N=" + std::to_string(n) + " did not converge");
      o.require(r.norm > prev, "not strictly increasing at N=" + std::to_string(n));
      o.require(r.norm < 2.0, "norm >= 2 at N=" + std::to_string(n));
      if (n == 2) at2 = r.norm;
      prev = r.norm;
    }
    // Largest singular value of [[1, 0], [1/2, 1/2]].
    const double exact = std::sqrt((3.0 + std::sqrt(5.0)) / 4.0);
    o.require(std::abs(at2 - exact) <= 1e-9, "N=2 value " + fmt(at2) + " vs " + fmt(exact));
    o.note << "N=2 " << fmt(at2) << ", N=1024 " << fmt(prev);
  });

  run(2, "oracle equivalence for random sections N<=4", 60.0, [&](Outcome& o) {
    std::mt19937_64 rng(2024);
    double worst_gap = 0.0, worst_kkt = 0.0;
    for (int s = 0; s < 20; ++s) {
      const std::size_t n = 1 + std::size_t(s % 4);
      const WeightSequence w(oracle::random_weights(n, rng));
      for (double p : {1.5, 2.0, 3.0}) {
        const auto e = ExponentPair::from_p(p);
        const auto r = operator_norm(w, e);
        const double brute = brute_force_norm(w, e);
        const double kkt = kkt_residual(w, e, r.maximizer, r.mu);
        worst_gap = std::max(worst_gap, std::abs(r.norm - brute));
        worst_kkt = std::max(worst_kkt, kkt);
        o.require(std::abs(r.norm - brute) <= 1e-6, "sample " + std::to_string(s) + " p=" + fmt(p) + " solver " +
                                                          fmt(r.norm) + " vs oracle " + fmt(brute));
        o.require(kkt < 1e-8, "kkt residual " + fmt(kkt));
      }
    }
    o.note << "max |solver-oracle| " << fmt(worst_gap) << ", max kkt " << fmt(worst_kkt);
  });

  run(3, "bound chain for lambda_n = n^(alpha-1)", 0.0, [&](Outcome& o) {
    for (double alpha : {2.0, 2.5, 3.0}) {
      for (double p : {1.5, 2.0}) {
        const auto e = ExponentPair::from_p(p);
        const auto c = cartlidge(make_weights(GeneratorSpec::power(alpha - 1.0, 10000)), e);
        o.require(c.holds, "cartlidge fails at alpha=" + fmt(alpha));
        o.require(std::abs(*c.constant - 1.0 / alpha) <= 1e-3, "L=" + fmt(*c.constant) + " at alpha=" + fmt(alpha));
        const double bound = alpha * p / (alpha * p - 1.0);
        const auto r = operator_norm(make_weights(GeneratorSpec::power(alpha - 1.0, 512)), e);
        o.require(r.norm <= bound + 1e-9,
                  "norm " + fmt(r.norm) + " > " + fmt(bound) + " at alpha=" + fmt(alpha) + " p=" + fmt(p));
      }
    }
  });

  run(4, "decreasing determination for lambda_k = k, p=2", 0.0, [&](Outcome& o) {
    for (std::size_t n : {8u, 64u, 256u}) {
      const auto w = make_weights(GeneratorSpec::power(1.0, n));
      const auto d = decreasing_determination(w, p2, 16.0 / 9.0, DeterminationForm::u_form);
      o.require(d.holds, "determination fails at N=" + std::to_string(n));
      const auto r = operator_norm(w, p2);
      o.require(maximizer_shape(r.maximizer, 1e-9) == SequenceShape::decreasing,
                "maximizer not decreasing at N=" + std::to_string(n));
    }
  });

  run(5, "negative exponent, lambda_n = n^0.5, p=-2", 0.0, [&](Outcome& o) {
    const auto e = ExponentPair::from_p(-2);
    const double l = 1.0 / std::sqrt(2.0);  // λ_1/λ_2
    const double bound = std::pow(-2.0 / (-2.0 - l), -2.0);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
      const auto w = make_weights(GeneratorSpec::power(0.5, n));
      const auto r = norm_negative_p(w, e);
      o.require(r.converged, "N=" + std::to_string(n) + " did not converge");
      o.require(maximizer_shape(matrix_input_sequence(r.maximizer, e), 1e-9) != SequenceShape::neither &&
                    (n == 1 || maximizer_shape(matrix_input_sequence(r.maximizer, e), 1e-9) ==
                                   SequenceShape::increasing),
                "maximizer not increasing at N=" + std::to_string(n));
      o.require(r.norm <= bound, "value " + fmt(r.norm) + " above bound at N=" + std::to_string(n));
      worst = std::max(worst, r.norm);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto w = make_weights(GeneratorSpec::power(0.5, 16));
    for (int t = 0; t < 100; ++t) {
      std::vector<double> a(16);
      for (auto& x : a) x = std::exp(6.0 * (unit(rng) - 0.5));
      o.require(negative_p_cartlidge_inequality(w, e, a, l).holds, "pointwise inequality fails, sample " +
                                                                         std::to_string(t));
    }
    o.note << "max value " << fmt(worst) << " <= " << fmt(bound);
  });

  run(6, "Schur certificates at N=10^4 and column sums at N=10^6", 120.0, [&](Outcome& o) {
    std::size_t checked = 0;
    for (double p : {1.5, 2.0, 3.0}) {
      const auto e = ExponentPair::from_p(p);
      for (double alpha : {0.6, 1.0, 1.2, 1.5}) {
        const double expected = alpha * p / (alpha * p - 1.0);
        if (alpha * p > 1.0) {
          const auto r = verify_schur(build_certificate(CertificateVariant::bennett, alpha, e, 10000), e);
          o.require(r.holds && std::abs(r.bound - expected) <= 1e-12 * expected,
                    "bennett alpha=" + fmt(alpha) + " p=" + fmt(p));
          ++checked;
        }
        if (alpha >= 1.0 && alpha <= 1.0 + 1.0 / p) {
          const auto r = verify_schur(build_certificate(CertificateVariant::improved, alpha, e, 10000), e);
          o.require(r.holds && std::abs(r.bound - expected) <= 1e-12 * expected,
                    "improved alpha=" + fmt(alpha) + " p=" + fmt(p));
          ++checked;
        }
      }
    }
    const std::size_t big = 1'000'000;
    const double zeta = oracle::partial_zeta(1.5, big);
    const auto b = row_sum_estimate(CertificateVariant::bennett, 1.0, p2, 1, big);
    const auto im = row_sum_estimate(CertificateVariant::improved, 1.0, p2, 1, big);
    // Independent references for the two partial sums at N = 10^6.
    const double b_ref = 2.0 / 3.0 * zeta;
    const double im_ref = std::sqrt(0.5) * zeta;
    o.require(std::abs(b.value - b_ref) <= 1e-3 && b.value <= 2.0 && b.holds, "bennett sum " + fmt(b.value));
    o.require(std::abs(b.value - 1.741) <= 1e-3, "bennett sum " + fmt(b.value) + " vs quoted 1.741");
    o.require(std::abs(im.value - im_ref) <= 1e-3 && im.value <= 2.0 && im.holds, "improved sum " + fmt(im.value));
    o.note << checked << " certificates; sums " << fmt(b.value) << " (ref " << fmt(b_ref) << "), " << fmt(im.value)
           << " (ref " << fmt(im_ref) << "; quoted 1.847 is the N=inf value " << fmt(std::sqrt(0.5) * 2.6123753486854883)
           << ")";
  });

  run(7, "Kaluza-Szego auxiliary sequence, constant weights, p=2", 0.0, [&](Outcome& o) {
    AuxSequence aux;
    aux.u2 = 4.0;
    for (std::size_t n = 1; n <= 10000; ++n) aux.w.push_back(1.0 / std::sqrt(double(n)));
    const auto r = kaluza_szego_check(make_weights(GeneratorSpec::constant(10000)), p2, aux);
    o.require(r.holds, "per-n check fails");
    const double implied = std::sqrt(*r.implied_bound);
    o.require(std::abs(implied - 2.0) <= 1e-15, "implied norm bound " + fmt(implied));
    for (std::size_t n : {1u, 10u, 100u, 1000u, 4000u}) {
      const auto s = operator_norm(make_weights(GeneratorSpec::constant(n)), p2);
      o.require(s.norm <= implied, "norm " + fmt(s.norm) + " at N=" + std::to_string(n));
    }
  });

  run(8, "Carleman probe against e^(1/(alpha+1))", 0.0, [&](Outcome& o) {
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      double prev = 0.0;
      o.note << "alpha=" << alpha << ":";
      for (std::size_t n : {10u, 20u, 40u}) {
        const auto probe = carleman_probe(alpha, n);
        o.require(probe.estimate <= probe.target + 1e-6,
                  "estimate " + fmt(probe.estimate) + " above target at alpha=" + fmt(alpha));
        o.require(probe.estimate > prev, "not increasing in N at alpha=" + fmt(alpha));
        prev = probe.estimate;
        o.note << " " << fmt(probe.estimate);
      }
      o.note << "; ";
    }
  });

  run(9, "concave limit condition for lambda_n = n^alpha", 0.0, [&](Outcome& o) {
    for (int k = 1; k <= 9; ++k) {
      const double alpha = 0.1 * k;
      const double l = 1.0 / (alpha + 1.0);
      const auto r = concave_limit_condition(make_weights(GeneratorSpec::power(alpha, 10000)), l);
      o.require(r.holds, "fails at alpha=" + fmt(alpha));
      // Below 1/(e−1) the condition holds with λ_1/λ_2 replaced by 1.
      if (alpha < 1.0 / (std::numbers::e - 1.0)) {
        o.require(std::numbers::e * (1.0 - l) < 1.0, "crude bound fails at alpha=" + fmt(alpha));
      }
    }
    o.require(std::exp(1.0 / std::pow(2.0, 0.8)) < 2.0, "e^(2^-0.8) >= 2");
    o.note << "threshold 1/(e-1) = " << fmt(1.0 / (std::numbers::e - 1.0)) << ", e^(2^-0.8) = "
           << fmt(std::exp(1.0 / std::pow(2.0, 0.8)));
  });

  run(10, "discrete Bliss constant as s -> 1+", 0.0, [&](Outcome& o) {
    for (auto [r, alpha] : {std::pair{2.0, 1.0}, std::pair{3.0, 0.9}}) {
      const double target = std::pow(alpha * r / (alpha * r - 1.0), r);
      double prev_err = INFINITY;
      for (int k = 2; k <= 5; ++k) {
        const double v = discrete_bliss_constant(r, 1.0 + std::pow(10.0, -k), alpha);
        const double err = std::abs(v - target);
        o.require(std::isfinite(v) && err < prev_err, "not monotone at k=" + std::to_string(k));
        prev_err = err;
      }
      o.require(prev_err <= 1e-3, "final error " + fmt(prev_err));
      o.note << "(r=" << r << ", alpha=" << alpha << ") error at s=1+1e-5: " << fmt(prev_err) << "; ";
    }
  });

  run(11, "property suites, 1000 cases each", 0.0, [&](Outcome& o) {
    o.require(!property_suite.empty(), "property suite path not given");
    if (property_suite.empty()) return;
    const std::string cmd = "\"" + property_suite + "\" --reporter compact > /dev/null 2>&1";
    o.require(std::system(cmd.c_str()) == 0, "property suite reported failures");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
