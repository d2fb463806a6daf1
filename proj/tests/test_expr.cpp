#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fraclap/expr.hpp"
#include "fraclap/kernels.hpp"

using namespace fraclap;

namespace {

double eval2(const ScalarField& f, double x, double y) { return f(Point{x, y}); }

ScalarField compile2(const std::string& src) {
  FieldSpec spec;
  spec.expression = parse_expr(src);
  spec.dimension = 2;
  return compile_field(spec);
}

// random expression generator for the round-trip property
Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 12);
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> lit(0.0, 8.0);
      return Expr{Expr::Op::literal, lit(rng), {}};
    }
    case 1:
      return Expr{Expr::Op::x1, 0.0, {}};
    case 2:
      return Expr{Expr::Op::rnorm, 0.0, {}};
    case 3:
      return Expr{Expr::Op::x2, 0.0, {}};
    case 4:
      return Expr{Expr::Op::add, 0.0, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 5:
      return Expr{Expr::Op::sub, 0.0, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 6:
      return Expr{Expr::Op::mul, 0.0, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 7:
      return Expr{Expr::Op::div, 0.0, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 8:
      return Expr{Expr::Op::neg, 0.0, {random_expr(rng, depth - 1)}};
    case 9: {
      // keep pow bases atomic so the tree stays in the unparse-able class
      std::uniform_real_distribution<double> lit(0.5, 3.0);
      Expr base{Expr::Op::literal, lit(rng), {}};
      Expr ex{Expr::Op::literal, lit(rng), {}};
      return Expr{Expr::Op::pow, 0.0, {base, ex}};
    }
    case 10:
      return Expr{Expr::Op::cos, 0.0, {random_expr(rng, depth - 1)}};
    case 11:
      return Expr{Expr::Op::abs, 0.0, {random_expr(rng, depth - 1)}};
    default:
      return Expr{Expr::Op::min, 0.0, {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
  }
}

}  // namespace

TEST_CASE("grammar: bubble profile expression") {
  Expr e = parse_expr("pospart(1 - rnorm^2)^0.75");
  CHECK(e.op == Expr::Op::pow);
  CHECK(e.kids[0].op == Expr::Op::pospart);
  CHECK(e.kids[1].literal == doctest::Approx(0.75));
}

TEST_CASE("grammar: malformed input reports 1-based offset") {
  try {
    parse_expr("2 + * 3");
    FAIL("expected parse error");
  } catch (const error& err) {
    CHECK(err.which() == error::kind::config);
    CHECK(std::string(err.what()).find("offset 5") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr(""), error);
  CHECK_THROWS_AS(parse_expr("foo(1)"), error);
  CHECK_THROWS_AS(parse_expr("min(1)"), error);
  CHECK_THROWS_AS(parse_expr("abs(1, 2)"), error);
  CHECK_THROWS_AS(parse_expr("(1 + 2"), error);
}

TEST_CASE("precedence: unary minus binds looser than ^") {
  Expr e = parse_expr("-x1^2");
  CHECK(e.op == Expr::Op::neg);
  CHECK(e.kids[0].op == Expr::Op::pow);
  ScalarField f = compile2("-x1^2");
  CHECK(eval2(f, 3.0, 0.0) == doctest::Approx(-9.0));
  // exponent accepts unary minus
  CHECK(eval2(compile2("2^-2"), 0.0, 0.0) == doctest::Approx(0.25));
  // right associativity
  CHECK(eval2(compile2("2^3^2"), 0.0, 0.0) == doctest::Approx(512.0));
}

TEST_CASE("compiled evaluation basics") {
  CHECK(eval2(compile2("1"), 0.4, 0.2) == 1.0);
  CHECK(eval2(compile2("cos(x1)"), 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(eval2(compile2("abs(rnorm)^0.5"), 0.25, 0.0) == doctest::Approx(0.5));
  CHECK(eval2(compile2("min(x1, x2) + max(x1, x2)"), 0.3, -1.2) == doctest::Approx(-0.9));
  CHECK(eval2(compile2("exp(log(2))"), 1.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("domain violations raise evaluation errors naming the point") {
  auto f = compile2("1/x1");
  CHECK_THROWS_AS(eval2(f, 0.0, 1.0), error);
  try {
    eval2(compile2("log(x1)"), -2.0, 0.5);
    FAIL("expected evaluation error");
  } catch (const error& err) {
    CHECK(err.which() == error::kind::evaluation);
    CHECK(std::string(err.what()).find("-2") != std::string::npos);
  }
  CHECK_THROWS_AS(eval2(compile2("sqrt(x1)"), -1.0, 0.0), error);
  CHECK_THROWS_AS(eval2(compile2("x1^0.5"), -1.0, 0.0), error);
  CHECK_THROWS_AS(eval2(compile2("(1/x1)^1"), 0.0, 0.0), error);
  CHECK_NOTHROW(eval2(compile2("pospart(x1)^0.5"), -1.0, 0.0));
}

TEST_CASE("dimension checks") {
  FieldSpec spec;
  spec.expression = parse_expr("x3 + 1");
  spec.dimension = 2;
  CHECK_THROWS_AS(compile_field(spec), error);
  spec.dimension = 3;
  CHECK_NOTHROW(compile_field(spec));
}

TEST_CASE("round trip: parse(unparse(tree)) is structurally identical") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 10000; ++i) {
    Expr e = random_expr(rng, 4);
    std::string text = unparse_expr(e);
    Expr e2 = parse_expr(text);
    REQUIRE(e == e2);
  }
  // and for source-level inputs: unparse(parse(src)) re-parses identically
  for (const char* src : {"pospart(1 - rnorm^2)^0.75", "-x1^2 + 3*x2/(1 - x1)",
                          "min(max(x1, 0.5), exp(-rnorm^2))", "2^-3^2"}) {
    Expr e = parse_expr(src);
    CHECK(parse_expr(unparse_expr(e)) == e);
  }
}

TEST_CASE("parser totality: random inputs never hang or crash") {
  std::mt19937_64 rng(7);
  const std::string tokens = "0123456789.+-*/^(), xcosinapbrtqel";
  std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 1);
  std::uniform_int_distribution<int> len(1, 80);
  int parsed = 0, rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string src;
    int m = len(rng);
    for (int c = 0; c < m; ++c) src += tokens[pick(rng)];
    try {
      parse_expr(src);
      ++parsed;
    } catch (const error& e) {
      CHECK(e.which() == error::kind::config);
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 10000);
  // and pure byte noise (may occasionally parse, must never crash)
  std::uniform_int_distribution<int> byte(1, 255);
  for (int i = 0; i < 2000; ++i) {
    std::string src;
    int m = len(rng);
    for (int c = 0; c < m; ++c) src += static_cast<char>(byte(rng));
    try {
      parse_expr(src);
    } catch (const error& e) {
      CHECK(e.which() == error::kind::config);
    }
  }
}

TEST_CASE("compiled bubble profile matches kernels.bubble up to the constant") {
  Constants k = Constants::make(2, 0.75);
  Ball B({0.0, 0.0}, 1.0);
  FieldSpec spec;
  spec.expression = parse_expr("pospart(1 - rnorm^2)^0.75");
  spec.dimension = 2;
  spec.support = B;
  ScalarField f = compile_field(spec);
  CHECK(f.radial_about_origin());
  for (double t : {0.0, 0.31, 0.77, 0.99}) {
    Point x{t, 0.0};
    CHECK(f(x) * k.bubble_k == doctest::Approx(bubble(x, B, 1.0, k)).epsilon(1e-12));
  }
}

TEST_CASE("batch evaluation agrees with pointwise and is total") {
  ScalarField f = compile2("cos(x1)*exp(-rnorm^2) + pospart(x2)");
  std::vector<double> xs, ys, out;
  for (int i = 0; i < 300; ++i) {
    xs.push_back(std::sin(i * 0.37) * 3.0);
    ys.push_back(std::cos(i * 0.21) * 2.0);
  }
  out.resize(xs.size());
  f.eval_batch(xs.data(), ys.data(), nullptr, out.data(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(out[i] == doctest::Approx(eval2(f, xs[i], ys[i])).epsilon(1e-15));
}
