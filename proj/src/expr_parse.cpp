#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "fraclap/errors.hpp"
#include "fraclap/expr.hpp"

namespace fraclap {

bool Expr::operator==(const Expr& other) const {
  if (op != other.op || kids.size() != other.kids.size()) return false;
  if (op == Op::literal && literal != other.literal) return false;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(kids[i] == other.kids[i])) return false;
  return true;
}

int Expr::max_var_index() const {
  int m = 0;
  if (op == Op::x1) m = 1;
  if (op == Op::x2) m = 2;
  if (op == Op::x3) m = 3;
  for (const auto& k : kids) m = std::max(m, k.max_var_index());
  return m;
}

bool Expr::uses_rnorm() const {
  if (op == Op::rnorm) return true;
  for (const auto& k : kids)
    if (k.uses_rnorm()) return true;
  return false;
}

bool Expr::uses_coords() const {
  if (op == Op::x1 || op == Op::x2 || op == Op::x3) return true;
  for (const auto& k : kids)
    if (k.uses_coords()) return true;
  return false;
}

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "syntax error at offset %zu: expected %s", pos + 1,
                  expected.c_str());
    throw_error(error::kind::config, buf);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos != src.size()) fail("end of input or operator");
    return e;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        Expr r{Expr::Op::add, 0.0, {std::move(e), term()}};
        e = std::move(r);
      } else if (accept('-')) {
        Expr r{Expr::Op::sub, 0.0, {std::move(e), term()}};
        e = std::move(r);
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) {
        Expr r{Expr::Op::mul, 0.0, {std::move(e), factor()}};
        e = std::move(r);
      } else if (accept('/')) {
        Expr r{Expr::Op::div, 0.0, {std::move(e), factor()}};
        e = std::move(r);
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr{Expr::Op::neg, 0.0, {factor()}};
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) {
      // right-associative; the exponent may carry a unary minus
      return Expr{Expr::Op::pow, 0.0, {std::move(base), factor()}};
    }
    return base;
  }

  Expr atom() {
    skip_ws();
    if (pos >= src.size()) fail("number, identifier or '('");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Expr e = expr();
      if (!accept(')')) fail("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("number, identifier or '('");
  }

  Expr number() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos++;
      if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      } else {
        pos = mark;  // bare 'e' belongs to the next token
      }
    }
    try {
      std::size_t used = 0;
      double v = std::stod(src.substr(start, pos - start), &used);
      if (used != pos - start) {
        pos = start;
        fail("well-formed number");
      }
      return Expr{Expr::Op::literal, v, {}};
    } catch (const std::exception&) {
      pos = start;
      fail("well-formed number");
    }
  }

  Expr identifier() {
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos]))))
      ++pos;
    std::string name = src.substr(start, pos - start);
    if (name == "x1") return Expr{Expr::Op::x1, 0.0, {}};
    if (name == "x2") return Expr{Expr::Op::x2, 0.0, {}};
    if (name == "x3") return Expr{Expr::Op::x3, 0.0, {}};
    if (name == "rnorm") return Expr{Expr::Op::rnorm, 0.0, {}};

    static const std::map<std::string, std::pair<Expr::Op, int>> fns = {
        {"abs", {Expr::Op::abs, 1}},   {"exp", {Expr::Op::exp, 1}},
        {"log", {Expr::Op::log, 1}},   {"sin", {Expr::Op::sin, 1}},
        {"cos", {Expr::Op::cos, 1}},   {"sqrt", {Expr::Op::sqrt, 1}},
        {"pospart", {Expr::Op::pospart, 1}},
        {"min", {Expr::Op::min, 2}},   {"max", {Expr::Op::max, 2}},
    };
    auto it = fns.find(name);
    if (it == fns.end()) {
      pos = start;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "unknown identifier '%s' at offset %zu", name.c_str(),
                    start + 1);
      throw_error(error::kind::config, buf);
    }
    if (!accept('(')) fail("'(' after function name");
    Expr node{it->second.first, 0.0, {}};
    node.kids.push_back(expr());
    for (int i = 1; i < it->second.second; ++i) {
      if (!accept(',')) fail("','");
      node.kids.push_back(expr());
    }
    if (accept(',')) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "arity error: '%s' takes %d argument(s) (offset %zu)",
                    name.c_str(), it->second.second, pos);
      throw_error(error::kind::config, buf);
    }
    if (!accept(')')) fail("')'");
    return node;
  }
};

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::add:
    case Expr::Op::sub:
      return 1;
    case Expr::Op::mul:
    case Expr::Op::div:
      return 2;
    case Expr::Op::neg:
      return 3;
    case Expr::Op::pow:
      return 4;
    default:
      return 5;
  }
}

void unparse_rec(const Expr& e, std::string& out) {
  auto child = [&](const Expr& k, bool parens) {
    if (parens) out += '(';
    unparse_rec(k, out);
    if (parens) out += ')';
  };
  switch (e.op) {
    case Expr::Op::literal: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", e.literal);
      out += buf;
      return;
    }
    case Expr::Op::x1: out += "x1"; return;
    case Expr::Op::x2: out += "x2"; return;
    case Expr::Op::x3: out += "x3"; return;
    case Expr::Op::rnorm: out += "rnorm"; return;
    case Expr::Op::add:
    case Expr::Op::sub: {
      child(e.kids[0], precedence(e.kids[0].op) < 1);
      out += e.op == Expr::Op::add ? " + " : " - ";
      child(e.kids[1], precedence(e.kids[1].op) <= 1);
      return;
    }
    case Expr::Op::mul:
    case Expr::Op::div: {
      child(e.kids[0], precedence(e.kids[0].op) < 2);
      out += e.op == Expr::Op::mul ? "*" : "/";
      child(e.kids[1], precedence(e.kids[1].op) <= 2);
      return;
    }
    case Expr::Op::neg: {
      out += '-';
      child(e.kids[0], precedence(e.kids[0].op) < 3);
      return;
    }
    case Expr::Op::pow: {
      // base must be an atom (never a '-'), exponent re-enters at factor level
      child(e.kids[0], precedence(e.kids[0].op) <= 4);
      out += '^';
      child(e.kids[1], precedence(e.kids[1].op) < 3);
      return;
    }
    default: {
      static const char* names[] = {"abs", "exp", "log", "sin", "cos", "sqrt", "pospart",
                                    "min", "max"};
      out += names[static_cast<int>(e.op) - static_cast<int>(Expr::Op::abs)];
      out += '(';
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        unparse_rec(e.kids[i], out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

Expr parse_expr(const std::string& src) {
  if (src.empty()) throw_error(error::kind::config, "parse: empty expression");
  if (src.size() > 64 * 1024) throw_error(error::kind::config, "parse: expression exceeds 64 KiB");
  Parser p{src};
  return p.parse();
}

std::string unparse_expr(const Expr& e) {
  std::string out;
  unparse_rec(e, out);
  return out;
}

}  // namespace fraclap
