#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraclap/frac_order.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/modulus.hpp"
#include "fraclap/probes.hpp"
#include "fraclap/quad_budget.hpp"
#include "fraclap/scalar_field.hpp"
#include "oracles.hpp"

using namespace fraclap;

TEST_CASE("FracOrder validates and classifies") {
  CHECK_THROWS_AS(FracOrder(0.0), error);
  CHECK_THROWS_AS(FracOrder(1.0), error);
  CHECK_THROWS_AS(FracOrder(-0.3), error);
  CHECK(FracOrder(0.25).classify() == FracOrder::regime::subcritical);
  CHECK(FracOrder(0.5).classify() == FracOrder::regime::critical);
  CHECK(FracOrder(0.75).classify() == FracOrder::regime::supercritical);
}

TEST_CASE("Ball membership") {
  Ball b({0.5, 0.0}, 2.0);
  CHECK(b.contains(Point{0.5, 1.9}));
  CHECK(!b.contains(Point{0.5, 2.0}));
  CHECK_THROWS_AS(Ball(Point{0.0, 0.0}, 0.0), error);
}

TEST_CASE("modulus_eval closed forms and monotonicity") {
  auto m = ModulusSpec::power(1.0, 0.5);
  CHECK(m.eval(0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.eval(0.0) == 0.0);
  CHECK(ModulusSpec::log_lipschitz(1.0).eval(0.0) == 0.0);

  auto e = ModulusSpec::empirical({{0.1, 0.2}, {0.2, 0.15}});
  CHECK(e.eval(0.2) == doctest::Approx(0.2).epsilon(1e-14));

  for (const ModulusSpec& spec : {m, ModulusSpec::log_lipschitz(0.7), e}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      double t = 2.0 * i / 200.0;
      double v = spec.eval(t);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }

  CHECK_THROWS_AS(m.eval(-0.1), error);
  CHECK_THROWS_AS(m.eval(2.5), error);
}

TEST_CASE("modulus_integral power closed form") {
  // int_0^delta t^alpha t^p dt = delta^{alpha+p+1}/(alpha+p+1)
  for (double alpha : {0.3, 0.5, 0.9}) {
    auto m = ModulusSpec::power(1.0, alpha);
    for (double p : {-0.5, 0.0, 1.0}) {
      double delta = 0.7;
      double expect = std::pow(delta, alpha + p + 1.0) / (alpha + p + 1.0);
      CHECK(m.integral(0.0, delta, p) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  // int_0^1 t^{1/2} dt = 2/3
  CHECK(ModulusSpec::power(1.0, 0.5).integral(0.0, 1.0, 0.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // divergent configuration rejected
  CHECK_THROWS_AS(ModulusSpec::power(1.0, 0.5).integral(0.0, 1.0, -1.6), error);
}

TEST_CASE("modulus_integral log_lipschitz against brute-force oracle") {
  auto m = ModulusSpec::log_lipschitz(1.0);
  // frozen midpoint-rule oracle at 1e6 nodes: int_{1/4}^{1/2} t(1+|ln t|) dt
  double brute = oracles::midpoint_rule(
      [](double t) { return t * (1.0 + std::abs(std::log(t))); }, 0.25, 0.5, 1000000);
  CHECK(brute == doctest::Approx(0.18394669878499658).epsilon(1e-10));
  CHECK(m.integral(0.25, 0.5, 0.0) == doctest::Approx(brute).epsilon(1e-6));
  // piece crossing t = 1
  double brute2 = oracles::midpoint_rule(
      [](double t) { return t * (1.0 + std::abs(std::log(t))) * std::pow(t, 0.25); }, 0.5, 1.5,
      1000000);
  CHECK(m.integral(0.5, 1.5, 0.25) == doctest::Approx(brute2).epsilon(1e-6));
}

TEST_CASE("modulus_integral additivity and empirical integration") {
  auto e = ModulusSpec::empirical({{0.05, 0.1}, {0.3, 0.22}, {0.8, 0.2}, {1.4, 0.6}});
  double p = -0.3;
  double whole = e.integral(0.0, 1.5, p);
  double split = e.integral(0.0, 0.4, p) + e.integral(0.4, 1.5, p);
  CHECK(whole == doctest::Approx(split).epsilon(1e-9));
  // against the midpoint oracle on the monotonized interpolant
  double brute = oracles::midpoint_rule([&](double t) { return e.eval(t) * std::pow(t, p); },
                                        1e-9, 1.5, 2000000);
  CHECK(whole == doctest::Approx(brute).epsilon(1e-5));
}

TEST_CASE("modulus_integral additivity for closed-form kinds") {
  for (const ModulusSpec& m :
       {ModulusSpec::power(1.3, 0.4), ModulusSpec::log_lipschitz(0.9)}) {
    double a = 0.1, b = 0.6, c = 1.7, p = -0.8;
    CHECK(m.integral(a, c, p) ==
          doctest::Approx(m.integral(a, b, p) + m.integral(b, c, p)).epsilon(1e-9));
  }
}

TEST_CASE("ScalarField compact support hard-zeroes outside") {
  Ball supp({0.2, -0.1}, 0.8);
  ScalarField f = ScalarField::from_function(2, [](const Point&) { return 3.5; })
                      .with_support(supp);
  auto pts = halton_shell_points(supp.center(), 0.81, 5.0, 2, 1000, 7);
  for (const auto& p : pts) CHECK(f(p) == 0.0);
  CHECK(f(Point{0.2, -0.1}) == 3.5);
}

TEST_CASE("QuadBudget validation") {
  QuadBudget q;
  CHECK_NOTHROW(q.validate());
  q.truncation_radius = 5.0;
  CHECK_THROWS_AS(q.validate(), error);
}
