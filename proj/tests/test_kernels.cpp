#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraclap/constants.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/kernels.hpp"
#include "oracles.hpp"

using namespace fraclap;

TEST_CASE("gamma function reference values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(gamma_fn(0.25) == doctest::Approx(3.6256099082219083).epsilon(1e-12));
  CHECK(gamma_fn(1.75) == doctest::Approx(0.91906252684888323).epsilon(1e-12));
  // reflection branch
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(abs_gamma_neg(0.25) == doctest::Approx(4.9016668098607106).epsilon(1e-12));
  CHECK(log_gamma(7.5) == doctest::Approx(std::lgamma(7.5)).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_fn(-2.0), error);
}

TEST_CASE("constants are positive and consistent") {
  for (int n : {2, 3})
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      Constants k = Constants::make(n, s);
      CHECK(k.riesz_a > 0.0);
      CHECK(k.poisson_c > 0.0);
      CHECK(k.flap_C > 0.0);
      CHECK(k.bubble_k > 0.0);
    }
  // closed forms at n=2, s=1/2
  Constants k = Constants::make(2, 0.5);
  CHECK(k.riesz_a == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-13));
  CHECK(k.poisson_c == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("Poisson normalization at the center, exact 1-D reduction") {
  // int_{R^2 \ B_1} P_1(y,0) dy = c(2,s) * 2pi * int_1^inf (rho^2-1)^{-s} / rho drho = 1
  for (double s : {0.25, 0.5, 0.75}) {
    Constants k = Constants::make(2, s);
    auto integrand = [s](double rho) {
      return std::pow(rho * rho - 1.0, -s) / rho;
    };
    // substitute rho = 1 + v^8: (rho^2-1)^{-s} jacobian-tamed for s < 7/8,
    // with rho^2-1 = v^8 (2 + v^8) computed cancellation-free
    double inner = oracles::adaptive_simpson(
        [&](double v) {
          double v8 = std::pow(v, 8.0);
          return 8.0 * std::pow(v, 7.0 - 8.0 * s) * std::pow(2.0 + v8, -s) / (1.0 + v8);
        },
        0.0, 1.0, 1e-13);
    double outer = oracles::adaptive_simpson(integrand, 2.0, 4000.0, 1e-13);
    double tail = std::pow(4000.0, -2.0 * s) / (2.0 * s);  // (rho^2-1)^{-s}/rho ~ rho^{-1-2s}
    double total = k.poisson_c * 2.0 * M_PI * (inner + outer + tail);
    CHECK(total == doctest::Approx(1.0).epsilon(2e-4));
  }
}

TEST_CASE("fundamental solution homogeneity and symmetry") {
  Constants k = Constants::make(2, 0.25);
  double s = 0.25, n = 2;
  Point e1{1.0, 0.0};
  CHECK(fundamental_solution(Point{2.0, 0.0}, k) / fundamental_solution(e1, k) ==
        doctest::Approx(std::pow(2.0, 2.0 * s - n)).epsilon(1e-14));
  // rotation invariance
  double c = std::cos(1.1), sn = std::sin(1.1);
  Point xr{0.7 * c - 0.3 * sn, 0.7 * sn + 0.3 * c};
  CHECK(fundamental_solution(Point{0.7, 0.3}, k) ==
        doctest::Approx(fundamental_solution(xr, k)).epsilon(1e-13));
  // homogeneity exactness across scales
  for (double lam : {0.5, 2.0, 7.0}) {
    Point x{0.4, -0.9};
    CHECK(fundamental_solution(lam * x, k) ==
          doctest::Approx(std::pow(lam, 2.0 * s - n) * fundamental_solution(x, k))
              .epsilon(1e-13));
  }
  CHECK_THROWS_AS(fundamental_solution(Point{0.0, 0.0}, k), error);
}

TEST_CASE("fundamental solution gradient against finite differences") {
  Constants k = Constants::make(2, 0.75);
  Point x{1.0, 0.5};
  Point g = fundamental_solution_gradient(x, k);
  // gradient is parallel to x
  CHECK(g[0] * x[1] - g[1] * x[0] == doctest::Approx(0.0).epsilon(1e-14));
  for (int axis = 0; axis < 2; ++axis) {
    auto f = [&](double t) {
      Point p = x;
      p[axis] = t;
      return fundamental_solution(p, k);
    };
    double fd = oracles::central_diff(f, x[axis], 1e-5);
    CHECK(std::abs(g[axis] - fd) <= 1e-6 * std::abs(g.norm()));
  }
}

TEST_CASE("poisson kernel positivity, domain checks, rotation equivariance") {
  Constants k = Constants::make(2, 0.6);
  Ball B({0.0, 0.0}, 1.0);
  CHECK(poisson_kernel(Point{1.7, 0.2}, Point{0.3, 0.1}, B, k) > 0.0);
  CHECK_THROWS_AS(poisson_kernel(Point{0.9, 0.0}, Point{0.3, 0.1}, B, k), error);
  CHECK_THROWS_AS(poisson_kernel(Point{1.7, 0.2}, Point{1.3, 0.1}, B, k), error);
  double th = 0.77, c = std::cos(th), sn = std::sin(th);
  auto rot = [&](const Point& p) { return Point{p[0] * c - p[1] * sn, p[0] * sn + p[1] * c}; };
  Point y{1.9, -0.4}, x{0.2, 0.5};
  CHECK(poisson_kernel(y, x, B, k) ==
        doctest::Approx(poisson_kernel(rot(y), rot(x), B, k)).epsilon(1e-13));
}

TEST_CASE("poisson kernel scaling P_r(y,x) = r^-n P_1(y/r, x/r)") {
  Constants k = Constants::make(2, 0.3);
  double r = 0.35;
  Ball Br({0.0, 0.0}, r), B1({0.0, 0.0}, 1.0);
  Point y{0.8, 0.3}, x{0.1, -0.05};
  double lhs = poisson_kernel(y, x, Br, k);
  double rhs = std::pow(r, -2.0) * poisson_kernel((1.0 / r) * y, (1.0 / r) * x, B1, k);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("bubble profile: boundary zero, scaling, compact support") {
  Constants k = Constants::make(2, 0.75);
  Ball B1({0.0, 0.0}, 1.0);
  CHECK(bubble(Point{2.0, 0.0}, B1, 1.0, k) == 0.0);
  CHECK(bubble(Point{1.0, 0.0}, B1, 1.0, k) == 0.0);
  CHECK(bubble(Point{0.0, 0.0}, B1, 1.0, k) == doctest::Approx(k.bubble_k).epsilon(1e-14));
  // scaling: bubble on B_r at x = r^{2s} * bubble on B_1 at x/r
  double r = 0.4, s = 0.75;
  Ball Br({0.0, 0.0}, r);
  Point x{0.17, -0.08};
  CHECK(bubble(x, Br, 1.0, k) ==
        doctest::Approx(std::pow(r, 2.0 * s) * bubble((1.0 / r) * x, B1, 1.0, k))
            .epsilon(1e-12));
  ScalarField bf = bubble_field(B1, 1.0, k);
  CHECK(bf(Point{0.3, 0.2}) == doctest::Approx(bubble(Point{0.3, 0.2}, B1, 1.0, k)));
}
