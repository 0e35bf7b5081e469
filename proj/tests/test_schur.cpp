#include <catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/norm_solver.hpp"
#include "hardylab/schur.hpp"
#include "hardylab/serialize.hpp"
#include "oracles.hpp"

using namespace hardylab;
using Catch::Approx;

TEST_CASE("trivial certificate", "[schur]") {
  const auto cert = SchurCertificate::from_dense({{1.0}}, {1.0}, {1.0}, 1.0, 1.0);
  const auto r = verify_schur(cert, ExponentPair::from_p(2));
  CHECK(r.holds);
  CHECK(r.bound == 1.0);
  CHECK_THROWS_AS(verify_schur(SchurCertificate::from_dense({{1.0}}, {0.0}, {1.0}, 1, 1), ExponentPair::from_p(2)),
                  InvalidArgument);
  CHECK_THROWS_AS(verify_schur(SchurCertificate::from_dense({{1.0}}, {1.0}, {-1.0}, 1, 1), ExponentPair::from_p(2)),
                  InvalidArgument);
  CHECK_THROWS_AS(verify_schur(cert, ExponentPair::from_p(-2)), InvalidArgument);
}

TEST_CASE("power integrals in closed form", "[schur]") {
  CHECK(power_integral(1, 0.5) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(power_integral(1, -0.5) == Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(power_integral(1, -1.0), InvalidArgument);
  for (std::size_t i : {2u, 3u, 10u, 1000u}) {
    for (double s : {-1.5, -1.0, -0.5, 0.0, 0.3, 2.0}) {
      const double quad = oracle::simpson([s](double x) { return std::pow(x, s); }, double(i - 1), double(i));
      CHECK(power_integral(i, s) == Approx(quad).epsilon(1e-10));
    }
  }
  CHECK(power_integral(2.5, 3.5, -1.0) == Approx(std::log(3.5 / 2.5)).epsilon(1e-15));
}

TEST_CASE("bennett certificate entries", "[schur]") {
  const auto e = ExponentPair::from_p(2);
  const auto cert = build_certificate(CertificateVariant::bennett, 1.0, e, 100);
  for (std::size_t j : {0u, 1u, 9u, 99u}) {
    CHECK(cert.entry(j, 0) == Approx(std::sqrt(4.0 / 3.0) / double(j + 1)).epsilon(1e-14));
    CHECK(cert.d[j] == Approx(1.0 / double(j + 1)).epsilon(1e-15));
  }
  CHECK(cert.c[0] == Approx(3.0).epsilon(1e-15));
  CHECK(cert.entry(0, 1) == 0.0);
  CHECK(cert.u1 == Approx(2.0));

  const auto r = verify_schur(cert, e);
  CHECK(r.holds);
  CHECK(r.bound == Approx(2.0).epsilon(1e-15));
  // The row family is an identity.
  CHECK(std::abs(r.worst_row_slack) < 1e-13);

  auto halved = cert;
  halved.u2 /= 2.0;
  const auto f = verify_schur(halved, e);
  CHECK_FALSE(f.holds);
  CHECK(f.worst_col_slack > 0.0);
}

TEST_CASE("improved certificate entries", "[schur]") {
  const auto cert = build_certificate(CertificateVariant::improved, 1.0, ExponentPair::from_p(2), 50);
  CHECK(cert.entry(0, 0) == Approx(std::pow(0.5, 0.25) * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cert.entry(4, 0) == Approx(std::pow(0.5, 0.25) * std::sqrt(2.0) / 5.0).epsilon(1e-14));
  CHECK(verify_schur(cert, ExponentPair::from_p(2)).holds);
}

TEST_CASE("certificate parameter ranges", "[schur]") {
  CHECK_THROWS_AS(build_certificate(CertificateVariant::bennett, 0.5, ExponentPair::from_p(2), 10), InvalidArgument);
  CHECK_THROWS_AS(build_certificate(CertificateVariant::improved, 1.6, ExponentPair::from_p(2), 10), InvalidArgument);
  CHECK_THROWS_AS(build_certificate(CertificateVariant::improved, 0.9, ExponentPair::from_p(2), 10), InvalidArgument);
  CHECK_THROWS_AS(row_sum_estimate(CertificateVariant::bennett, 0.5, ExponentPair::from_p(2), 1, 10), InvalidArgument);
  CHECK_THROWS_AS(row_sum_estimate(CertificateVariant::bennett, 1.0, ExponentPair::from_p(2), 11, 10),
                  InvalidArgument);
}

TEST_CASE("certificates pass over the parameter grid", "[schur]") {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto e = ExponentPair::from_p(p);
    for (double alpha : {0.6, 1.0, 1.2, 1.5}) {
      if (alpha * p > 1.0) {
        const auto r = verify_schur(build_certificate(CertificateVariant::bennett, alpha, e, 2000), e);
        CHECK(r.holds);
        CHECK(r.bound == Approx(alpha * p / (alpha * p - 1.0)).epsilon(1e-14));
      }
      if (alpha >= 1.0 && alpha <= 1.0 + 1.0 / p) {
        CHECK(verify_schur(build_certificate(CertificateVariant::improved, alpha, e, 2000), e).holds);
      }
    }
  }
}

TEST_CASE("separable and dense verification agree", "[schur]") {
  const auto e = ExponentPair::from_p(3.0);
  const auto cert = build_certificate(CertificateVariant::bennett, 1.2, e, 700);
  std::vector<std::vector<double>> rows(cert.n);
  for (std::size_t j = 0; j < cert.n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) rows[j].push_back(cert.entry(j, i));
  }
  const auto dense = SchurCertificate::from_dense(rows, cert.c, cert.d, cert.u1, cert.u2);
  const auto a = verify_schur(cert, e);
  const auto b = verify_schur(dense, e);
  CHECK(a.holds == b.holds);
  CHECK(a.worst_col_index == b.worst_col_index);
  CHECK(a.worst_col_slack == Approx(b.worst_col_slack).margin(1e-13));
  CHECK(a.worst_row_slack == Approx(b.worst_row_slack).margin(1e-13));
}

TEST_CASE("certified bound dominates the solver", "[schur]") {
  // The certificates dominate the difference-power matrix entrywise, so their
  // bound also bounds its norm.
  for (double p : {1.5, 2.0, 3.0}) {
    const auto e = ExponentPair::from_p(p);
    for (double alpha : {1.0, 1.2, 1.5}) {
      for (auto variant : {CertificateVariant::bennett, CertificateVariant::improved}) {
        if (variant == CertificateVariant::improved && alpha > 1.0 + 1.0 / p) continue;
        const auto cert = build_certificate(variant, alpha, e, 200);
        const auto w = make_weights(GeneratorSpec::diff_power(alpha, 200));
        for (std::size_t j = 0; j < 200; j += 37) {
          for (std::size_t i = 0; i <= j; ++i) {
            REQUIRE(w.lambda(i) / w.big_lambda(j) <= cert.entry(j, i) * (1 + 1e-12));
          }
        }
        const auto r = verify_schur(cert, e);
        CHECK(r.holds);
        CHECK(operator_norm(w, e).norm <= r.bound);
      }
    }
  }
}

TEST_CASE("scalar column-sum estimates", "[schur]") {
  const auto e = ExponentPair::from_p(2);
  const auto b = row_sum_estimate(CertificateVariant::bennett, 1.0, e, 1, 1'000'000);
  CHECK(b.value == Approx(2.0 / 3.0 * oracle::partial_zeta(1.5, 1'000'000)).epsilon(1e-12));
  CHECK(b.bound == 2.0);
  CHECK(b.holds);
  const auto im = row_sum_estimate(CertificateVariant::improved, 1.0, e, 1, 1'000'000);
  CHECK(im.value == Approx(std::sqrt(0.5) * oracle::partial_zeta(1.5, 1'000'000)).epsilon(1e-12));
  CHECK(im.bound == Approx(2.0));
  CHECK(im.holds);
  CHECK(im.hadamard_holds == true);
  CHECK_FALSE(b.hadamard_holds.has_value());
  for (std::size_t i : {2u, 10u, 500u}) {
    CHECK(row_sum_estimate(CertificateVariant::bennett, 1.5, ExponentPair::from_p(3), i, 5000).holds);
    CHECK(row_sum_estimate(CertificateVariant::improved, 1.2, ExponentPair::from_p(3), i, 5000).holds);
  }
}

TEST_CASE("Hadamard inequality by quadrature", "[schur]") {
  for (double alpha : {1.0, 1.3}) {
    for (double p : {1.5, 2.0, 3.0}) {
      const double s = alpha + 1.0 - 1.0 / p;
      auto h = [s](double x) { return std::pow(x, -s); };
      for (double a : {0.5, 1.5, 7.5, 99.5}) {
        const double b = a + 1.0;
        const double mean = oracle::simpson(h, a, b);
        CHECK(h(0.5 * (a + b)) <= mean);
        CHECK(mean <= 0.5 * (h(a) + h(b)));
      }
    }
  }
}

TEST_CASE("mean chain", "[schur]") {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto e = ExponentPair::from_p(p);
    for (double alpha = 1.0; alpha <= 1.0 + 1.0 / p + 1e-12; alpha += 0.1) {
      for (std::size_t i = 1; i <= 2000; ++i) {
        const auto m = mean_chain_terms(alpha, e, i);
        REQUIRE(m.difference <= m.midpoint * (1 + 1e-13));
        REQUIRE(m.midpoint <= m.certificate * (1 + 1e-13));
      }
    }
  }
}

TEST_CASE("Kaluza-Szego reduction", "[schur]") {
  const auto e = ExponentPair::from_p(2);
  const auto w = make_weights(GeneratorSpec::constant(10000));
  AuxSequence aux;
  aux.u2 = 4.0;
  for (std::size_t n = 1; n <= 10000; ++n) aux.w.push_back(1.0 / std::sqrt(double(n)));
  const auto r = kaluza_szego_check(w, e, aux);
  CHECK(r.holds);
  CHECK(r.implied_bound == 4.0);
  CHECK(r.extra("telescoped_holds") == 1.0);
  CHECK(*r.extra("telescoped_worst_ratio") < 1.0);

  const auto cert = kaluza_szego_certificate(w, e, aux);
  const auto v = verify_schur(cert, e);
  CHECK(v.holds);
  CHECK(v.bound == Approx(2.0));
  CHECK(std::abs(v.worst_row_slack) < 1e-12);

  AuxSequence flat{std::vector<double>(100, 1.0), 4.0};
  const auto f = kaluza_szego_check(make_weights(GeneratorSpec::constant(100)), e, flat);
  CHECK_FALSE(f.holds);
  CHECK(f.first_failure_index == 1);

  AuxSequence one{{1.0}, 4.0};
  CHECK(kaluza_szego_check(make_weights(GeneratorSpec::constant(1)), e, one).holds);

  AuxSequence rising{{1.0, 2.0, 3.0}, 4.0};
  CHECK_THROWS_AS(kaluza_szego_check(make_weights(GeneratorSpec::constant(3)), e, rising), InvalidArgument);
}

TEST_CASE("certificate descriptions", "[schur]") {
  const auto cert = build_certificate(CertificateVariant::improved, 1.2, ExponentPair::from_p(2), 10);
  const json j = describe_certificate(cert);
  CHECK(j.at("variant") == "improved");
  CHECK(j.at("n") == 10);
  const auto dense = SchurCertificate::from_dense({{1.0}, {0.5, 0.5}}, {1, 1}, {1, 1}, 1, 1);
  const json d = describe_certificate(dense);
  CHECK(d.at("entries").size() == 2);
  CHECK(d.at("entries")[1].size() == 2);
}
