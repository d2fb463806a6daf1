#include "fraclap/scalar_field.hpp"

#include <cmath>
#include <vector>

#include "fraclap/interp.hpp"

namespace fraclap {
namespace {

class ConstantImpl : public FieldImpl {
 public:
  explicit ConstantImpl(double v) : v_(v) {}
  double eval(const double*, int) const override { return v_; }
  void eval_batch(const double*, const double*, const double*, double* out, std::size_t m,
                  int) const override {
    for (std::size_t i = 0; i < m; ++i) out[i] = v_;
  }

 private:
  double v_;
};

class FunctionImpl : public FieldImpl {
 public:
  explicit FunctionImpl(int n, std::function<double(const Point&)> fn)
      : n_(n), fn_(std::move(fn)) {}
  double eval(const double* x, int n) const override {
    return fn_(Point(std::vector<double>(x, x + n)));
  }

 private:
  int n_;
  std::function<double(const Point&)> fn_;
};

class SumImpl : public FieldImpl {
 public:
  SumImpl(ScalarField a, ScalarField b) : a_(std::move(a)), b_(std::move(b)) {}
  double eval(const double* x, int n) const override {
    (void)n;
    return a_.eval_coords(x) + b_.eval_coords(x);
  }
  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m, int) const override {
    std::vector<double> tmp(m);
    a_.eval_batch(xs, ys, zs, out, m);
    b_.eval_batch(xs, ys, zs, tmp.data(), m);
    for (std::size_t i = 0; i < m; ++i) out[i] += tmp[i];
  }

 private:
  ScalarField a_, b_;
};

class ScaleImpl : public FieldImpl {
 public:
  ScaleImpl(double c, ScalarField a) : c_(c), a_(std::move(a)) {}
  double eval(const double* x, int n) const override {
    (void)n;
    return c_ * a_.eval_coords(x);
  }
  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m, int) const override {
    a_.eval_batch(xs, ys, zs, out, m);
    for (std::size_t i = 0; i < m; ++i) out[i] *= c_;
  }

 private:
  double c_;
  ScalarField a_;
};

class RadialTableImpl : public FieldImpl {
 public:
  RadialTableImpl(std::shared_ptr<const RadialTable> tab) : tab_(std::move(tab)) {}
  double eval(const double* x, int n) const override {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    return tab_->eval(std::sqrt(r2));
  }

 private:
  std::shared_ptr<const RadialTable> tab_;
};

class OutsideImpl : public FieldImpl {
 public:
  OutsideImpl(ScalarField a, Ball b) : a_(std::move(a)), b_(std::move(b)) {}
  double eval(const double* x, int n) const override {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = x[i] - b_.center()[i];
      d2 += d * d;
    }
    if (d2 <= b_.radius() * b_.radius()) return 0.0;
    return a_.eval_coords(x);
  }

 private:
  ScalarField a_;
  Ball b_;
};

}  // namespace

ScalarField ScalarField::constant(int n, double value) {
  ScalarField f(std::make_shared<ConstantImpl>(value), n);
  return f.with_decay({std::abs(value), 0.0})
      .with_smoothness(SmoothnessHint::c1())
      .with_radial(true);
}

ScalarField ScalarField::from_function(int n, std::function<double(const Point&)> fn) {
  return ScalarField(std::make_shared<FunctionImpl>(n, std::move(fn)), n);
}

double ScalarField::eval_coords(const double* x) const {
  if (support_) {
    double d2 = 0.0;
    for (int i = 0; i < dim_; ++i) {
      double d = x[i] - support_->center()[i];
      d2 += d * d;
    }
    if (d2 >= support_->radius() * support_->radius()) return 0.0;
  }
  return impl_->eval(x, dim_);
}

void ScalarField::eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                             std::size_t m) const {
  impl_->eval_batch(xs, ys, zs, out, m, dim_);
  if (support_) {
    const double cx = support_->center()[0];
    const double cy = support_->center()[1];
    const double cz = dim_ >= 3 ? support_->center()[2] : 0.0;
    const double r2 = support_->radius() * support_->radius();
    for (std::size_t i = 0; i < m; ++i) {
      double dx = xs[i] - cx, dy = ys[i] - cy;
      double d2 = dx * dx + dy * dy;
      if (dim_ >= 3) {
        double dz = zs[i] - cz;
        d2 += dz * dz;
      }
      if (d2 >= r2) out[i] = 0.0;
    }
  }
}

ScalarField field_sum(const ScalarField& a, const ScalarField& b) {
  if (a.dim() != b.dim()) throw_error(error::kind::argument, "field_sum: dimension mismatch");
  ScalarField f(std::make_shared<SumImpl>(a, b), a.dim());
  f = f.with_radial(a.radial_about_origin() && b.radial_about_origin());
  if (a.decay() && b.decay())
    f = f.with_decay({a.decay()->amplitude + b.decay()->amplitude,
                      std::min(a.decay()->exponent, b.decay()->exponent)});
  return f;
}

ScalarField field_scale(double c, const ScalarField& a) {
  ScalarField f(std::make_shared<ScaleImpl>(c, a), a.dim());
  f = f.with_radial(a.radial_about_origin());
  if (a.decay()) f = f.with_decay({std::abs(c) * a.decay()->amplitude, a.decay()->exponent});
  if (a.smoothness()) f = f.with_smoothness(*a.smoothness());
  if (a.support()) f = f.with_support(*a.support());
  return f;
}

ScalarField make_radial_field(int dim, const std::function<double(double)>& profile,
                              double hi, std::vector<double> marks, double rel_tol) {
  double scale = std::abs(profile(0.5 * hi)) + std::abs(profile(0.125 * hi));
  auto tab = std::make_shared<RadialTable>(profile, 0.0, hi, std::move(marks), rel_tol, 12,
                                           scale);
  ScalarField f(std::make_shared<RadialTableImpl>(tab), dim);
  return f.with_radial(true);
}

ScalarField field_outside(const ScalarField& a, const Ball& b) {
  ScalarField f(std::make_shared<OutsideImpl>(a, b), a.dim());
  bool centered = b.center().norm() == 0.0;
  f = f.with_radial(a.radial_about_origin() && centered);
  if (a.decay()) f = f.with_decay(*a.decay());
  if (a.support()) f = f.with_support(*a.support());
  return f;
}

}  // namespace fraclap
