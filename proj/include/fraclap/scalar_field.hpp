#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "fraclap/geometry.hpp"

namespace fraclap {

// |u(y)| <= amplitude everywhere; exponent records the asymptotic decay rate
// |u(y)| ~ |y|^{-exponent} when known (0 = merely bounded).
struct DecayEnvelope {
  double amplitude;
  double exponent = 0.0;
};

// Caller-asserted smoothness class near the points where the field will be
// differentiated under the integral sign.  holder(alpha) uses the convention
// C^{0,alpha} for alpha <= 1 and C^{1,alpha-1} for alpha in (1,2].
struct SmoothnessHint {
  enum class label { bounded, holder, c1 };
  label kind = label::bounded;
  double alpha = 0.0;

  static SmoothnessHint bounded() { return {label::bounded, 0.0}; }
  static SmoothnessHint holder(double a) { return {label::holder, a}; }
  static SmoothnessHint c1() { return {label::c1, 2.0}; }
};

// Evaluation core of a scalar field.  Implementations must be pure: the same
// point always yields the same value, with no observable state.
class FieldImpl {
 public:
  virtual ~FieldImpl() = default;
  virtual double eval(const double* x, int n) const = 0;
  // SoA batch evaluation; zs may be null when n == 2.
  virtual void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                          std::size_t m, int n) const {
    double p[3] = {0, 0, 0};
    for (std::size_t i = 0; i < m; ++i) {
      p[0] = xs[i];
      p[1] = ys[i];
      if (n >= 3) p[2] = zs[i];
      out[i] = eval(p, n);
    }
  }
};

// A real-valued function on R^n together with the metadata the singular
// integral engines need: compact support (hard-zeroed), a decay envelope for
// tail bounds, a smoothness hint, and whether the field is radially symmetric
// about the origin (which unlocks exact 1-D angular reductions).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::shared_ptr<const FieldImpl> impl, int dim)
      : impl_(std::move(impl)), dim_(dim) {
    if (dim_ < 2) throw_error(error::kind::argument, "ScalarField: need dimension >= 2");
  }

  static ScalarField constant(int n, double value);
  static ScalarField from_function(int n, std::function<double(const Point&)> fn);

  int dim() const { return dim_; }
  bool valid() const { return impl_ != nullptr; }

  double operator()(const Point& p) const { return eval_coords(p.coords().data()); }
  double eval_coords(const double* x) const;
  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m) const;

  const std::optional<Ball>& support() const { return support_; }
  const std::optional<DecayEnvelope>& decay() const { return decay_; }
  const std::optional<SmoothnessHint>& smoothness() const { return hint_; }
  bool radial_about_origin() const { return radial_; }

  ScalarField with_support(Ball b) const {
    ScalarField f = *this;
    f.support_ = std::move(b);
    return f;
  }
  ScalarField with_decay(DecayEnvelope d) const {
    ScalarField f = *this;
    f.decay_ = d;
    return f;
  }
  ScalarField with_smoothness(SmoothnessHint h) const {
    ScalarField f = *this;
    f.hint_ = h;
    return f;
  }
  ScalarField with_radial(bool r) const {
    ScalarField f = *this;
    f.radial_ = r;
    return f;
  }

 private:
  std::shared_ptr<const FieldImpl> impl_;
  int dim_ = 2;
  std::optional<Ball> support_;
  std::optional<DecayEnvelope> decay_;
  std::optional<SmoothnessHint> hint_;
  bool radial_ = false;
};

// f + g, a*f, pointwise combinations used by the solvers.
ScalarField field_sum(const ScalarField& a, const ScalarField& b);
ScalarField field_scale(double c, const ScalarField& a);
// a restricted to the complement of B (zero inside), used for exterior data.
ScalarField field_outside(const ScalarField& a, const Ball& b);
// Radially symmetric field u(x) = profile(|x|) backed by an adaptive
// Chebyshev table of the profile on [0, hi] (clamped beyond).  rel_tol must
// stay above the profile's own noise floor.
ScalarField make_radial_field(int dim, const std::function<double(double)>& profile,
                              double hi, std::vector<double> marks = {},
                              double rel_tol = 1e-7);

}  // namespace fraclap
