#include <cmath>
#include <cstdio>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/expr.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap {
namespace {

// Postfix program over a stack of value buffers.  The exact elementwise
// binary/unary ops run through the SIMD kernel table; transcendental ops are
// scalar libm loops (identical in every backend), each followed by a domain
// check so a non-finite value never escapes silently.
struct Instr {
  Expr::Op op;
  double literal;
};

void flatten(const Expr& e, std::vector<Instr>& prog) {
  for (const auto& k : e.kids) flatten(k, prog);
  prog.push_back({e.op, e.literal});
}

int stack_need(const Expr& e) {
  if (e.kids.empty()) return 1;
  int need = 0;
  for (std::size_t i = 0; i < e.kids.size(); ++i)
    need = std::max(need, static_cast<int>(i) + stack_need(e.kids[i]));
  return std::max(need, static_cast<int>(e.kids.size()));
}

[[noreturn]] void eval_fail(const char* what, const double* xs, const double* ys,
                            const double* zs, std::size_t i, int dim) {
  char buf[200];
  if (dim >= 3)
    std::snprintf(buf, sizeof(buf), "evaluation error: %s at point (%.17g, %.17g, %.17g)", what,
                  xs[i], ys[i], zs[i]);
  else
    std::snprintf(buf, sizeof(buf), "evaluation error: %s at point (%.17g, %.17g)", what, xs[i],
                  ys[i]);
  throw_error(error::kind::evaluation, buf);
}

class ExprImpl : public FieldImpl {
 public:
  ExprImpl(const Expr& e, int dim) : dim_(dim), depth_(stack_need(e)) {
    flatten(e, prog_);
    uses_rnorm_ = e.uses_rnorm();
  }

  double eval(const double* x, int n) const override {
    double out;
    const double z = 0.0;
    eval_batch(&x[0], &x[1], n >= 3 ? &x[2] : &z, &out, 1, n);
    return out;
  }

  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m, int n) const override {
    const auto& K = simd::kernels();
    constexpr std::size_t kChunk = 1024;
    std::vector<double> stack(static_cast<std::size_t>(depth_) * kChunk);
    std::vector<double> rnorm(uses_rnorm_ ? kChunk : 0);

    for (std::size_t base = 0; base < m; base += kChunk) {
      const std::size_t c = std::min(kChunk, m - base);
      if (uses_rnorm_) {
        K.mul(xs + base, xs + base, rnorm.data(), c);
        std::vector<double> t(c);
        K.mul(ys + base, ys + base, t.data(), c);
        K.add(rnorm.data(), t.data(), rnorm.data(), c);
        if (n >= 3) {
          K.mul(zs + base, zs + base, t.data(), c);
          K.add(rnorm.data(), t.data(), rnorm.data(), c);
        }
        K.vsqrt(rnorm.data(), rnorm.data(), c);
      }

      int sp = 0;
      auto buf = [&](int slot) { return stack.data() + static_cast<std::size_t>(slot) * kChunk; };
      for (const auto& ins : prog_) {
        switch (ins.op) {
          case Expr::Op::literal: {
            double* d = buf(sp++);
            for (std::size_t i = 0; i < c; ++i) d[i] = ins.literal;
            break;
          }
          case Expr::Op::x1: {
            double* d = buf(sp++);
            for (std::size_t i = 0; i < c; ++i) d[i] = xs[base + i];
            break;
          }
          case Expr::Op::x2: {
            double* d = buf(sp++);
            for (std::size_t i = 0; i < c; ++i) d[i] = ys[base + i];
            break;
          }
          case Expr::Op::x3: {
            double* d = buf(sp++);
            for (std::size_t i = 0; i < c; ++i) d[i] = zs[base + i];
            break;
          }
          case Expr::Op::rnorm: {
            double* d = buf(sp++);
            for (std::size_t i = 0; i < c; ++i) d[i] = rnorm[i];
            break;
          }
          case Expr::Op::add:
            --sp;
            K.add(buf(sp - 1), buf(sp), buf(sp - 1), c);
            break;
          case Expr::Op::sub:
            --sp;
            K.sub(buf(sp - 1), buf(sp), buf(sp - 1), c);
            break;
          case Expr::Op::mul:
            --sp;
            K.mul(buf(sp - 1), buf(sp), buf(sp - 1), c);
            break;
          case Expr::Op::div: {
            --sp;
            K.div(buf(sp - 1), buf(sp), buf(sp - 1), c);
            if (!K.all_finite(buf(sp - 1), c)) {
              const double* a = buf(sp - 1);
              for (std::size_t i = 0; i < c; ++i)
                if (!std::isfinite(a[i])) eval_fail("division by zero", xs, ys, zs, base + i, n);
            }
            break;
          }
          case Expr::Op::pow: {
            --sp;
            double* a = buf(sp - 1);
            const double* b = buf(sp);
            for (std::size_t i = 0; i < c; ++i) {
              double v = std::pow(a[i], b[i]);
              if (!std::isfinite(v))
                eval_fail("pow outside its numeric domain", xs, ys, zs, base + i, n);
              a[i] = v;
            }
            break;
          }
          case Expr::Op::neg:
            K.neg(buf(sp - 1), buf(sp - 1), c);
            break;
          case Expr::Op::abs:
            K.vabs(buf(sp - 1), buf(sp - 1), c);
            break;
          case Expr::Op::sqrt: {
            double* a = buf(sp - 1);
            for (std::size_t i = 0; i < c; ++i)
              if (a[i] < 0.0) eval_fail("sqrt of a negative value", xs, ys, zs, base + i, n);
            K.vsqrt(a, a, c);
            break;
          }
          case Expr::Op::exp: {
            double* a = buf(sp - 1);
            for (std::size_t i = 0; i < c; ++i) {
              double v = std::exp(a[i]);
              if (!std::isfinite(v)) eval_fail("exp overflow", xs, ys, zs, base + i, n);
              a[i] = v;
            }
            break;
          }
          case Expr::Op::log: {
            double* a = buf(sp - 1);
            for (std::size_t i = 0; i < c; ++i) {
              if (!(a[i] > 0.0))
                eval_fail("log of a non-positive value", xs, ys, zs, base + i, n);
              a[i] = std::log(a[i]);
            }
            break;
          }
          case Expr::Op::sin: {
            double* a = buf(sp - 1);
            for (std::size_t i = 0; i < c; ++i) a[i] = std::sin(a[i]);
            break;
          }
          case Expr::Op::cos: {
            double* a = buf(sp - 1);
            for (std::size_t i = 0; i < c; ++i) a[i] = std::cos(a[i]);
            break;
          }
          case Expr::Op::pospart:
            K.pospart(buf(sp - 1), buf(sp - 1), c);
            break;
          case Expr::Op::min:
            --sp;
            K.vmin(buf(sp - 1), buf(sp), buf(sp - 1), c);
            break;
          case Expr::Op::max:
            --sp;
            K.vmax(buf(sp - 1), buf(sp), buf(sp - 1), c);
            break;
        }
      }
      const double* res = buf(0);
      if (!K.all_finite(res, c)) {
        for (std::size_t i = 0; i < c; ++i)
          if (!std::isfinite(res[i])) eval_fail("non-finite result", xs, ys, zs, base + i, n);
      }
      for (std::size_t i = 0; i < c; ++i) out[base + i] = res[i];
    }
  }

 private:
  int dim_;
  int depth_;
  bool uses_rnorm_;
  std::vector<Instr> prog_;
};

}  // namespace

ScalarField compile_field(const FieldSpec& spec) {
  if (spec.dimension < 2 || spec.dimension > 3)
    throw_error(error::kind::config, "compile_field: dimension must be 2 or 3");
  if (spec.expression.max_var_index() > spec.dimension) {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "compile_field: x%d exceeds the declared dimension %d",
                  spec.expression.max_var_index(), spec.dimension);
    throw_error(error::kind::config, buf);
  }
  ScalarField f(std::make_shared<ExprImpl>(spec.expression, spec.dimension), spec.dimension);
  bool radial = !spec.expression.uses_coords();
  if (spec.support) {
    f = f.with_support(*spec.support);
    radial = radial && spec.support->center().norm() == 0.0;
  }
  if (spec.decay) f = f.with_decay(*spec.decay);
  if (spec.holder_alpha) {
    double a = *spec.holder_alpha;
    if (!(a > 0.0) || a > 2.0)
      throw_error(error::kind::config, "compile_field: holder_alpha must be in (0,2]");
    f = f.with_smoothness(a >= 2.0 ? SmoothnessHint::c1() : SmoothnessHint::holder(a));
  }
  return f.with_radial(radial);
}

}  // namespace fraclap
