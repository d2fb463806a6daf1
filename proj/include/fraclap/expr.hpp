#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraclap/scalar_field.hpp"

namespace fraclap {

// Abstract syntax tree of the field expression language.
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power            (unary minus binds looser than ^)
//   power  := atom ('^' factor)?            (right-associative)
//   atom   := number | x1|x2|x3|rnorm | fn '(' args ')' | '(' expr ')'
// Functions: abs exp log sin cos sqrt pospart (1 arg), min max (2 args).
struct Expr {
  enum class Op {
    literal, x1, x2, x3, rnorm,
    add, sub, mul, div, pow, neg,
    abs, exp, log, sin, cos, sqrt, pospart, min, max,
  };

  Op op = Op::literal;
  double literal = 0.0;
  std::vector<Expr> kids;

  bool operator==(const Expr& other) const;
  // Highest coordinate index referenced (0 if only rnorm / literals).
  int max_var_index() const;
  bool uses_rnorm() const;
  bool uses_coords() const;
};

// Parses src (<= 64 KiB). Throws error::kind::config with a 1-based byte
// offset and an expected-token message on malformed input.
Expr parse_expr(const std::string& src);

// Canonical text form; re-parsing yields a structurally equal tree.
std::string unparse_expr(const Expr& e);

struct FieldSpec {
  Expr expression;
  int dimension = 2;
  std::optional<Ball> support;         // compiled field hard-zeroed outside
  std::optional<DecayEnvelope> decay;
  std::optional<double> holder_alpha;  // smoothness hint exponent in (0,2]
};

// Compiles the spec to an evaluable field.  Evaluation is total: division by
// zero, log of a non-positive value, 0^negative and any non-finite result
// raise error::kind::evaluation naming the offending point.
ScalarField compile_field(const FieldSpec& spec);

}  // namespace fraclap
