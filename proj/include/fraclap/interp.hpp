#pragma once

#include <functional>
#include <vector>

namespace fraclap {

// Piecewise Chebyshev interpolant of a 1-D function, refined adaptively until
// midpoint checks meet the tolerance (splits concentrate around cusps, e.g.
// the C^s behaviour of solutions at a ball boundary).  Evaluation is a binary
// search plus a barycentric sum; the table is immutable after construction.
class RadialTable {
 public:
  // batch_fn evaluates the profile at many abscissae at once (and may fan the
  // work out across threads).  The split tolerance is relative to
  // max(panel scale, scale_hint); it must sit above the noise floor of the
  // profile or the refinement would split to max_depth everywhere.
  using BatchFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

  RadialTable(const std::function<double(double)>& fn, double a, double b,
              std::vector<double> breakpoints = {}, double rel_tol = 1e-9,
              int max_depth = 14, double scale_hint = 0.0);
  RadialTable(const BatchFn& fn, double a, double b, std::vector<double> breakpoints,
              double rel_tol, int max_depth, double scale_hint);

  double eval(double x) const;       // clamps to [a,b]
  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t panel_count() const { return panels_.size(); }

 private:
  struct Panel {
    double a, b;
    std::vector<double> vals;  // at Chebyshev-Lobatto nodes
  };
  void build(const BatchFn& fn, double a, double b, double tol, int depth, int max_depth,
             double scale_hint);
  static double eval_panel(const Panel& p, double x);

  double a_, b_;
  std::vector<Panel> panels_;  // sorted by a
};

// Trigonometric interpolation of periodic samples on the midpoint grid
// phi_j = 2*pi*(j+1/2)/n (the circle-rule grid), exact for band-limited data.
class RingInterp {
 public:
  explicit RingInterp(const double* vals, std::size_t n);
  double eval(double phi) const;

 private:
  std::vector<double> a_, b_;  // cosine / sine coefficients
  double a0_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace fraclap
