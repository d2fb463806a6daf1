#include "fraclap/kernels.hpp"

#include <cmath>

#include "fraclap/errors.hpp"

namespace fraclap {

double fundamental_solution(const Point& x, const Constants& k) {
  double r2 = x.norm_sq();
  if (r2 == 0.0) throw_error(error::kind::singularity, "fundamental_solution: x = 0");
  double s = k.s.value();
  return k.riesz_a * std::pow(r2, 0.5 * (2.0 * s - k.n));
}

Point fundamental_solution_gradient(const Point& x, const Constants& k) {
  double r2 = x.norm_sq();
  if (r2 == 0.0) throw_error(error::kind::singularity, "fundamental_solution_gradient: x = 0");
  double s = k.s.value();
  // grad a|x|^{2s-n} = (2s-n) a |x|^{2s-n-2} x
  double c = (2.0 * s - k.n) * k.riesz_a * std::pow(r2, 0.5 * (2.0 * s - k.n) - 1.0);
  return c * x;
}

double poisson_kernel(const Point& y, const Point& x, const Ball& B, const Constants& k) {
  double r = B.radius();
  double ax2 = (x - B.center()).norm_sq();
  double ay2 = (y - B.center()).norm_sq();
  if (!(ax2 < r * r)) throw_error(error::kind::domain, "poisson_kernel: x not inside the ball");
  if (!(ay2 > r * r))
    throw_error(error::kind::domain, "poisson_kernel: y not outside the closed ball");
  double s = k.s.value();
  double dxy2 = (x - y).norm_sq();
  return k.poisson_c * std::pow((r * r - ax2) / (ay2 - r * r), s) *
         std::pow(dxy2, -0.5 * k.n);
}

double bubble(const Point& x, const Ball& B, double c0, const Constants& k) {
  double r = B.radius();
  double s = k.s.value();
  double q = 1.0 - (x - B.center()).norm_sq() / (r * r);
  if (q <= 0.0) return 0.0;
  return c0 * k.bubble_k * std::pow(r, 2.0 * s) * std::pow(q, s);
}

namespace {

class BubbleImpl : public FieldImpl {
 public:
  BubbleImpl(Ball B, double c0, const Constants& k)
      : B_(std::move(B)),
        s_(k.s.value()),
        amp_(c0 * k.bubble_k * std::pow(B_.radius(), 2.0 * k.s.value())) {}

  double eval(const double* x, int n) const override {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = x[i] - B_.center()[i];
      d2 += d * d;
    }
    double q = 1.0 - d2 / (B_.radius() * B_.radius());
    if (q <= 0.0) return 0.0;
    return amp_ * std::pow(q, s_);
  }

 private:
  Ball B_;
  double s_;
  double amp_;
};

}  // namespace

ScalarField bubble_field(const Ball& B, double c0, const Constants& k) {
  ScalarField f(std::make_shared<BubbleImpl>(B, c0, k), B.dim());
  bool centered = B.center().norm() == 0.0;
  // The profile is C^1 only in the open ball; callers evaluate its
  // fractional Laplacian at interior points, which is what the hint asserts.
  return f.with_support(B)
      .with_decay({std::abs(c0) * k.bubble_k * std::pow(B.radius(), 2.0 * k.s.value()), 0.0})
      .with_smoothness(SmoothnessHint::c1())
      .with_radial(centered);
}

}  // namespace fraclap
