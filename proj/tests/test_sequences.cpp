#include <catch_amalgamated.hpp>

#include <cmath>

#include "hardylab/sequences.hpp"
#include "hardylab/serialize.hpp"

using namespace hardylab;
using Catch::Approx;

TEST_CASE("exponent pair derives the conjugate", "[sequences]") {
  const auto e = ExponentPair::from_p(3.0);
  CHECK(e.q() == Approx(1.5));
  CHECK(1.0 / e.p() + 1.0 / e.q() == Approx(1.0).epsilon(1e-15));
  const auto neg = ExponentPair::from_p(-2.0);
  CHECK(neg.negative());
  CHECK(neg.q() == Approx(2.0 / 3.0));
  CHECK_THROWS_AS(ExponentPair::from_p(0.5), InvalidArgument);
  CHECK_THROWS_AS(ExponentPair::from_p(1.0), InvalidArgument);
  CHECK_THROWS_AS(ExponentPair::from_p(0.0), InvalidArgument);
}

TEST_CASE("generators produce the documented weights", "[sequences]") {
  const auto c = make_weights(GeneratorSpec::constant(3));
  CHECK(std::vector<double>(c.lambdas().begin(), c.lambdas().end()) == std::vector<double>{1, 1, 1});
  CHECK(std::vector<double>(c.prefix().begin(), c.prefix().end()) == std::vector<double>{1, 2, 3});

  const auto d = make_weights(GeneratorSpec::diff_power(2.0, 3));
  CHECK(d.lambda(0) == 1.0);
  CHECK(d.lambda(1) == Approx(3.0).epsilon(1e-15));
  CHECK(d.lambda(2) == Approx(5.0).epsilon(1e-15));
  CHECK(d.big_lambda(2) == Approx(9.0).epsilon(1e-15));

  const auto r = make_weights(GeneratorSpec::reference_prime(1.5, 2));
  CHECK(r.lambda(0) == 1.0);
  CHECK(r.lambda(1) == Approx(1.2).epsilon(1e-14));
  const auto r10 = make_weights(GeneratorSpec::reference_prime(1.5, 10));
  for (std::size_t n = 1; n < 10; ++n) CHECK(r10.ratio(n) == Approx((double(n + 1) + 0.75) / 1.5).epsilon(1e-13));

  const auto p = make_weights(GeneratorSpec::power(0.5, 4));
  CHECK(p.lambda(3) == Approx(2.0));
}

TEST_CASE("generator parameter ranges are enforced", "[sequences]") {
  CHECK_THROWS_AS(make_weights(GeneratorSpec::mean_power(0.5, 1.0, 5)), InvalidArgument);
  CHECK_THROWS_AS(make_weights(GeneratorSpec::mean_power(2.0, 1.5, 5)), InvalidArgument);
  CHECK_THROWS_AS(make_weights(GeneratorSpec::reference_prime(2.0, 5)), InvalidArgument);
  CHECK_THROWS_AS(make_weights(GeneratorSpec::constant(0)), InvalidArgument);
  try {
    (void)make_weights(GeneratorSpec::explicit_values({1.0, 2.0, -1.0}));
    FAIL("expected NonPositiveWeight");
  } catch (const NonPositiveWeight& e) {
    CHECK(e.index() == 3);
    CHECK(e.value() == -1.0);
  }
  CHECK_THROWS_AS(make_weights(GeneratorSpec::diff_power(-0.5, 4)), NonPositiveWeight);
}

TEST_CASE("generalized mean closed forms", "[means]") {
  CHECK(generalized_mean(1, 2, 2) == Approx(1.5).epsilon(1e-15));
  CHECK(generalized_mean(1, 4, -1) == Approx(2.0).epsilon(1e-15));
  CHECK(generalized_mean(1, 2, 0) == Approx(1.0 / std::log(2.0)).epsilon(1e-15));
  // identric mean: e^{-1} (b^b/a^a)^{1/(b−a)}
  CHECK(generalized_mean(1, 2, 1) == Approx(4.0 / std::exp(1.0)).epsilon(1e-15));
  CHECK(generalized_mean(3, 3, 0.7) == 3.0);
  CHECK_THROWS_AS(generalized_mean(0, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(generalized_mean(1, -1, 2), InvalidArgument);
}

TEST_CASE("generalized mean is continuous across its special points", "[means]") {
  for (double r : {0.0, 1.0}) {
    const double at = generalized_mean(2, 5, r);
    for (double h : {1e-7, 1e-5, 1e-3}) {
      CHECK(generalized_mean(2, 5, r + h) == Approx(at).epsilon(10 * h));
      CHECK(generalized_mean(2, 5, r - h) == Approx(at).epsilon(10 * h));
      CHECK(generalized_mean(2, 5, r - h) < generalized_mean(2, 5, r + h));
    }
  }
  // a ≈ b: L_r(a, a(1+ε)) ≈ a(1 + ε/2).
  for (double r : {-3.0, 0.0, 0.5, 1.0, 4.0}) {
    const double eps = 1e-10;
    CHECK(generalized_mean(1.0, 1.0 + eps, r) == Approx(1.0 + eps / 2).epsilon(1e-15));
  }
}

TEST_CASE("generalized mean at zero is the continuous limit", "[means]") {
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(generalized_mean_at_zero(2.0, r) == Approx(generalized_mean(2.0, 1e-40, r)).epsilon(1e-6));
  }
  CHECK(generalized_mean_at_zero(1.0, 1.0) == Approx(std::exp(-1.0)));
}

TEST_CASE("difference weights equal alpha L_alpha^(alpha-1)", "[means]") {
  for (double alpha : {1.2, 1.5, 2.0, 2.5}) {
    const auto d = make_weights(GeneratorSpec::diff_power(alpha, 200));
    const auto m = make_weights(GeneratorSpec::mean_power(alpha, alpha, 200));
    for (std::size_t i = 0; i < 200; ++i) CHECK(d.lambda(i) == Approx(alpha * m.lambda(i)).epsilon(1e-12));
  }
}

TEST_CASE("mean_power with large beta approaches i^(alpha-1)", "[means]") {
  const auto m = make_weights(GeneratorSpec::mean_power(1.5, 1000.0, 100));
  const auto p = make_weights(GeneratorSpec::power(0.5, 100));
  for (std::size_t i = 0; i < 100; ++i) CHECK(std::abs(m.lambda(i) / p.lambda(i) - 1.0) < 1e-2);
}

TEST_CASE("ratio profile shape", "[sequences]") {
  const auto c = ratio_profile(make_weights(GeneratorSpec::constant(20)));
  CHECK(c.shape == ProfileShape::affine);
  CHECK(c.ratios[4] == 5.0);
  CHECK(ratio_profile(make_weights(GeneratorSpec::power(2.0, 50))).shape == ProfileShape::convex);
  CHECK(ratio_profile(make_weights(GeneratorSpec::power(0.5, 50))).shape == ProfileShape::concave);
  CHECK(ratio_profile(make_weights(GeneratorSpec::explicit_values({1, 5, 1, 5, 1}))).shape == ProfileShape::neither);
}

TEST_CASE("prefix sums are compensated", "[sequences]") {
  std::vector<double> v(1'000'000, 0.1);
  v[0] = 1e8;
  const WeightSequence w(v);
  const long double exact = 1e8L + 0.1L * 999999.0L;
  CHECK(std::abs(w.big_lambda(999999) - double(exact)) <= 3e-8);
}

TEST_CASE("generator spec round-trips through JSON", "[sequences]") {
  for (const auto& g : {GeneratorSpec::constant(4), GeneratorSpec::power(0.5, 7), GeneratorSpec::mean_power(1.2, 2.0, 3),
                        GeneratorSpec::explicit_values({1.0, 2.5})}) {
    const json j = g;
    const auto back = j.get<GeneratorSpec>();
    CHECK(back.kind == g.kind);
    CHECK(back.n == g.n);
    CHECK(back.values == g.values);
    CHECK(make_weights(back).big_lambda(back.n - 1) == make_weights(g).big_lambda(g.n - 1));
  }
  CHECK(json(GeneratorSpec::power(0.5, 7)).dump() == R"({"alpha":0.5,"kind":"power","n":7})");
  CHECK_THROWS_AS(json::parse(R"({"kind":"nope","n":2})").get<GeneratorSpec>(), InvalidArgument);
}
