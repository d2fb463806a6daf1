#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fraclap/engines.hpp"
#include "fraclap/expr.hpp"
#include "fraclap/kernels.hpp"
#include "oracles.hpp"

using namespace fraclap;

namespace {

ScalarField cos_field(double xi) {
  return ScalarField::from_function(2, [xi](const Point& p) { return std::cos(xi * p[0]); })
      .with_decay({1.0, 0.0})
      .with_smoothness(SmoothnessHint::c1())
      .with_radial(false);
}

ScalarField smooth_bump(double radius = 1.0) {
  // (1 - |x|^2/R^2)^3 on B_R, C^2 at the boundary
  FieldSpec spec;
  spec.expression = parse_expr("pospart(1 - rnorm^2/" + std::to_string(radius * radius) + ")^3");
  spec.dimension = 2;
  spec.support = Ball(Point::zero(2), radius);
  spec.holder_alpha = 2.0;
  return compile_field(spec);
}

QuadBudget cos_budget() {
  QuadBudget q;
  q.radial_nodes = 20;
  q.angular_nodes = 128;
  q.truncation_radius = 200.0;
  q.target_rel_tol = 1e-6;
  q.max_refinements = 3;
  return q;
}

}  // namespace

TEST_CASE("frac_laplacian of a constant vanishes to 1e-10") {
  Constants k = Constants::make(2, 0.5);
  QuadBudget q;
  ScalarField one = ScalarField::constant(2, 1.0);
  EngineResult r = frac_laplacian(one, Point{0.1, -0.3}, k, q);
  CHECK(std::abs(r.value) <= 1e-10);
}

TEST_CASE("frac_laplacian requires hint and tail control") {
  Constants k = Constants::make(2, 0.5);
  QuadBudget q;
  ScalarField nohint =
      ScalarField::from_function(2, [](const Point&) { return 1.0; }).with_decay({1.0, 0.0});
  CHECK_THROWS_AS(frac_laplacian(nohint, Point{0.0, 0.0}, k, q), error);
  ScalarField noenv = ScalarField::from_function(2, [](const Point&) { return 1.0; })
                          .with_smoothness(SmoothnessHint::c1());
  CHECK_THROWS_AS(frac_laplacian(noenv, Point{0.0, 0.0}, k, q), error);
  Constants k75 = Constants::make(2, 0.75);
  ScalarField weak = ScalarField::constant(2, 1.0).with_smoothness(SmoothnessHint::holder(0.3));
  CHECK_THROWS_AS(frac_laplacian(weak, Point{0.0, 0.0}, k75, q), error);
}

TEST_CASE("Fourier symbol: frac_laplacian cos(xi.x) at 0 equals |xi|^{2s}") {
  QuadBudget q = cos_budget();
  for (double s : {0.25, 0.5, 0.75}) {
    Constants k = Constants::make(2, s);
    for (double xi : {1.0, 2.0}) {
      EngineResult r = frac_laplacian(cos_field(xi), Point{0.0, 0.0}, k, q);
      double expect = std::pow(xi, 2.0 * s);
      CAPTURE(s);
      CAPTURE(xi);
      CHECK(std::abs(r.value - expect) <= 1e-3 * expect);
    }
  }
}

TEST_CASE("convergence: doubling nodes shrinks the symbol error") {
  Constants k = Constants::make(2, 0.5);
  QuadBudget lo = cos_budget();
  lo.radial_nodes = 12;
  lo.angular_nodes = 32;
  lo.truncation_radius = 50.0;
  lo.max_refinements = 0;
  QuadBudget hi = lo;
  hi.radial_nodes = 24;
  hi.angular_nodes = 64;
  double e_lo = std::abs(frac_laplacian(cos_field(1.0), Point{0.0, 0.0}, k, lo).value - 1.0);
  double e_hi = std::abs(frac_laplacian(cos_field(1.0), Point{0.0, 0.0}, k, hi).value - 1.0);
  CHECK(e_hi * 2.0 <= e_lo + 1e-9);
  CHECK(e_hi <= 5e-4);  // truncation floor at R = 50
}

TEST_CASE("bubble identity: frac_laplacian(bubble) = 1 in B_1") {
  QuadBudget q;
  q.target_rel_tol = 1e-5;
  for (double s : {0.25, 0.75}) {
    Constants k = Constants::make(2, s);
    ScalarField v = bubble_field(Ball::unit(2), 1.0, k);
    for (const Point& x : {Point{0.0, 0.0}, Point{0.3, 0.0}, Point{0.0, 0.5}}) {
      EngineResult r = frac_laplacian(v, x, k, q);
      CAPTURE(s);
      CAPTURE(x[0]);
      CAPTURE(x[1]);
      CHECK(std::abs(r.value - 1.0) <= 2e-3);
    }
  }
}

TEST_CASE("frac_laplacian linearity within estimated error") {
  Constants k = Constants::make(2, 0.6);
  QuadBudget q;
  q.target_rel_tol = 1e-5;
  ScalarField u = bubble_field(Ball::unit(2), 1.0, k);
  ScalarField v = smooth_bump(0.8);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  Point x{0.2, 0.1};
  for (int trial = 0; trial < 3; ++trial) {
    double alpha = coef(rng), beta = coef(rng);
    ScalarField w = field_sum(field_scale(alpha, u), field_scale(beta, v))
                        .with_support(Ball::unit(2))
                        .with_smoothness(SmoothnessHint::c1());
    EngineResult rw = frac_laplacian(w, x, k, q);
    EngineResult ru = frac_laplacian(u, x, k, q);
    EngineResult rv = frac_laplacian(v, x, k, q);
    double lin = alpha * ru.value + beta * rv.value;
    double slack = 2.0 * (rw.est_error + std::abs(alpha) * ru.est_error +
                          std::abs(beta) * rv.est_error) + 1e-10;
    CHECK(std::abs(rw.value - lin) <= slack);
  }
}

TEST_CASE("frac_laplacian translation invariance") {
  Constants k = Constants::make(2, 0.4);
  QuadBudget q;
  q.max_refinements = 1;
  ScalarField u = smooth_bump(1.0);
  Point h{0.6, -0.4};
  ScalarField shifted =
      ScalarField::from_function(2, [u, h](const Point& p) { return u(p - h); })
          .with_support(Ball(h, 1.0))
          .with_smoothness(SmoothnessHint::c1());
  Point x{0.25, 0.1};
  EngineResult a = frac_laplacian(u, x, k, q);
  EngineResult b = frac_laplacian(shifted, x + h, k, q);
  CHECK(std::abs(a.value - b.value) <= 2.0 * (a.est_error + b.est_error) + 1e-12);
}

TEST_CASE("frac_laplacian scaling law") {
  double s = 0.35;
  Constants k = Constants::make(2, s);
  QuadBudget q;
  q.target_rel_tol = 1e-6;
  ScalarField u = smooth_bump(1.0);
  Point x{0.2, 0.05};
  for (double lam : {0.5, 2.0}) {
    ScalarField scaled =
        ScalarField::from_function(2, [u, lam](const Point& p) { return u(lam * p); })
            .with_support(Ball(Point::zero(2), 1.0 / lam))
            .with_smoothness(SmoothnessHint::c1());
    EngineResult a = frac_laplacian(scaled, x, k, q);
    Point lx = lam * x;
    EngineResult b = frac_laplacian(u, lx, k, q);
    double rhs = std::pow(lam, 2.0 * s) * b.value;
    CHECK(std::abs(a.value - rhs) <=
          3.0 * (a.est_error + std::pow(lam, 2.0 * s) * b.est_error) + 1e-9);
  }
}

TEST_CASE("riesz potential: zero data, frozen bump values, rotation equivariance") {
  Constants k = Constants::make(2, 0.5);
  QuadBudget q;
  q.target_rel_tol = 1e-8;

  ScalarField zero = ScalarField::constant(2, 0.0).with_support(Ball::unit(2));
  CHECK(riesz_potential(zero, Point{0.3, 0.0}, k, q).value == 0.0);

  // frozen values from an independent 1-D ring-kernel oracle
  ScalarField f = smooth_bump(1.0);
  CHECK(riesz_potential(f, Point{0.0, 0.0}, k, q).value ==
        doctest::Approx(16.0 / 35.0).epsilon(2e-6));
  CHECK(riesz_potential(f, Point{0.4, 0.0}, k, q).value ==
        doctest::Approx(0.34708559220251534).epsilon(2e-6));
  CHECK(riesz_potential(f, Point{1.7, 0.0}, k, q).value ==
        doctest::Approx(0.07489392032608137).epsilon(2e-6));

  // radial data: equal-norm probes agree
  double v1 = riesz_potential(f, Point{0.3, 0.4}, k, q).value;
  double v2 = riesz_potential(f, Point{0.5, 0.0}, k, q).value;
  CHECK(std::abs(v1 - v2) <= 1e-6);

  // non-compact input rejected
  CHECK_THROWS_AS(riesz_potential(ScalarField::constant(2, 1.0), Point{0.0, 0.0}, k, q),
                  error);
}

TEST_CASE("riesz gradient: odd cancellation, finite differences, zero data") {
  Constants k = Constants::make(2, 0.75);
  QuadBudget q;
  q.target_rel_tol = 1e-8;
  ScalarField f = smooth_bump(1.0);

  Point g0 = riesz_potential_gradient(f, Point{0.0, 0.0}, k, q);
  CHECK(g0.norm() <= 1e-6);

  Point x{0.3, 0.1};
  Point g = riesz_potential_gradient(f, x, k, q);
  for (int axis = 0; axis < 2; ++axis) {
    auto fd = [&](double t) {
      Point p = x;
      p[axis] = t;
      return riesz_potential(f, p, k, q).value;
    };
    double d = oracles::central_diff(fd, x[axis], 1e-4);
    CHECK(std::abs(g[axis] - d) <= std::max(1e-4, 1e-2 * g.norm()));
  }

  ScalarField zero = ScalarField::constant(2, 0.0).with_support(Ball::unit(2));
  CHECK(riesz_potential_gradient(zero, Point{0.2, 0.0}, k, q).norm() == 0.0);
}

TEST_CASE("left inverse: frac_laplacian(riesz_potential(f)) = f") {
  double s = 0.5;
  Constants k = Constants::make(2, s);
  QuadBudget qr;
  qr.target_rel_tol = 1e-8;
  ScalarField f = smooth_bump(1.0);

  // tabulated radial view of u = Phi * f (u is radial since f is)
  ScalarField u = make_radial_field(
                      2,
                      [&](double rho) {
                        return riesz_potential(f, Point{rho, 0.0}, k, qr).value;
                      },
                      60.0, {1.0})
                      .with_decay({0.5, 2.0 - 2.0 * s})
                      .with_smoothness(SmoothnessHint::c1());
  QuadBudget ql;
  ql.target_rel_tol = 1e-5;
  for (const Point& x : {Point{0.0, 0.0}, Point{0.3, 0.0}, Point{0.1, 0.45}}) {
    double lap = frac_laplacian(u, x, k, ql).value;
    CHECK(std::abs(lap - f(x)) <= 5e-3);
  }
}

TEST_CASE("exterior poisson integral: normalization, bounds, equivariance") {
  QuadBudget q;
  for (double s : {0.25, 0.5, 0.75}) {
    Constants k = Constants::make(2, s);
    ScalarField one = ScalarField::constant(2, 1.0);
    for (double r : {1.0, 0.25}) {
      Ball B(Point::zero(2), r);
      for (const Point& xu : {Point{0.0, 0.0}, Point{0.3, 0.0}, Point{0.6, 0.2}}) {
        Point x = r * xu;
        EngineResult res = exterior_poisson_integral(one, x, B, k, q);
        CAPTURE(s);
        CAPTURE(r);
        CHECK(std::abs(res.value - 1.0) <= 1e-4);
      }
    }
  }

  Constants k = Constants::make(2, 0.5);
  Ball B(Point::zero(2), 1.0);
  ScalarField zero = ScalarField::constant(2, 0.0);
  CHECK(exterior_poisson_integral(zero, Point{0.2, 0.0}, B, k, q).value == 0.0);

  // off-center ball exercises the general (non-radial) route
  Ball Boff(Point{0.4, -0.2}, 0.7);
  ScalarField g =
      ScalarField::from_function(2, [](const Point& p) { return std::exp(-(p - Point{1.5, 0.5}).norm_sq()); })
          .with_decay({1.0, 0.0});
  EngineResult res = exterior_poisson_integral(g, Point{0.4, -0.2}, Boff, k, q);
  CHECK(res.value >= 0.0);
  CHECK(res.value <= 1.0);  // maximum principle: inf g <= value <= sup g

  // domain errors
  CHECK_THROWS_AS(exterior_poisson_integral(g, Point{1.2, 0.0}, B, k, q), error);

  // radial g: equal-norm probes agree (radial route)
  ScalarField gr = ScalarField::from_function(2, [](const Point& p) {
                     return 1.0 / (1.0 + p.norm_sq());
                   }).with_decay({1.0, 2.0}).with_radial(true);
  double va = exterior_poisson_integral(gr, Point{0.3, 0.4}, B, k, q).value;
  double vb = exterior_poisson_integral(gr, Point{0.5, 0.0}, B, k, q).value;
  CHECK(std::abs(va - vb) <= 1e-6);
}

TEST_CASE("n = 3 engines: normalization, bubble identity, radial symmetry") {
  QuadBudget q;
  q.radial_nodes = 10;
  q.angular_nodes = 160;  // ~ 9 x 18 product rule on the sphere
  q.max_refinements = 1;
  Constants k = Constants::make(3, 0.5);

  // Poisson normalization through both routes
  ScalarField one = ScalarField::constant(3, 1.0);
  Ball B = Ball::unit(3);
  for (const Point& x : {Point{0.0, 0.0, 0.0}, Point{0.3, 0.1, -0.2}}) {
    double vr = exterior_poisson_integral(one, x, B, k, q).value;
    double vg = exterior_poisson_integral(one.with_radial(false), x, B, k, q).value;
    CHECK(std::abs(vr - 1.0) <= 2e-4);
    CHECK(std::abs(vg - 1.0) <= 2e-4);
  }

  // bubble identity at interior probes
  ScalarField v = bubble_field(B, 1.0, k);
  QuadBudget qb = q;
  qb.target_rel_tol = 1e-5;
  for (const Point& x : {Point{0.0, 0.0, 0.0}, Point{0.2, 0.1, 0.1}}) {
    EngineResult r = frac_laplacian(v, x, k, qb);
    CHECK(std::abs(r.value - 1.0) <= 5e-3);
  }

  // radial riesz data: equal-norm probes agree
  FieldSpec spec;
  spec.expression = parse_expr("pospart(1 - rnorm^2)^3");
  spec.dimension = 3;
  spec.support = B;
  spec.holder_alpha = 2.0;
  ScalarField f3 = compile_field(spec);
  double w1 = riesz_potential(f3, Point{0.5, 0.0, 0.0}, k, q).value;
  double w2 = riesz_potential(f3, Point{0.0, 0.3, 0.4}, k, q).value;
  CHECK(std::abs(w1 - w2) <= 2e-5);
}

TEST_CASE("exterior poisson integral: radial and general routes agree") {
  Constants k = Constants::make(2, 0.6);
  QuadBudget q;
  Ball B(Point::zero(2), 1.0);
  auto prof = [](const Point& p) { return std::exp(-0.5 * (p.norm() - 1.0)); };
  ScalarField radial_g =
      ScalarField::from_function(2, prof).with_decay({1.0, 0.0}).with_radial(true);
  ScalarField general_g =
      ScalarField::from_function(2, prof).with_decay({1.0, 0.0}).with_radial(false);
  for (const Point& x : {Point{0.0, 0.0}, Point{0.35, 0.2}, Point{0.0, 0.62}}) {
    double vr = exterior_poisson_integral(radial_g, x, B, k, q).value;
    double vg = exterior_poisson_integral(general_g, x, B, k, q).value;
    CHECK(vr == doctest::Approx(vg).epsilon(5e-5));
  }
}
