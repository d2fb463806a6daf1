#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/engines.hpp"
#include "fraclap/interp.hpp"
#include "fraclap/quad_budget.hpp"

namespace fraclap {

// Discretization of int_{R^n \ B} P_r(y,x) g(y) dy shared across evaluation
// points: the node set depends only on (B, budget), so g is evaluated once.
// Evaluation switches between three routes:
//  - radial:  g radial about the origin and B centered there; exact angular
//             reduction to a 1-D integral (works uniformly up to |x| -> r);
//  - fast:    |x-x0| <= 0.7 r; SIMD weighted sums over the shared nodes;
//  - near:    |x-x0| >  0.7 r (n=2); per-ring angular panels graded toward
//             the kernel peak, with g taken from trigonometric ring
//             interpolants of the shared values (no new field evaluations).
// The tail beyond the truncation radius uses the exact angular average of the
// kernel (2pi/(rho^2-a^2), resp. 4pi/(rho(rho^2-a^2))) against the far-field
// mean of g; it vanishes identically when g has compact support inside the
// truncation radius.
class PoissonExtension {
 public:
  PoissonExtension(ScalarField g, Ball B, const Constants& k, const QuadBudget& q);

  double eval(const Point& x) const { return eval_with_defect(x, nullptr); }
  // norm_defect (optional out): |P[1](x) - 1| computed on the same nodes, an
  // engineering accuracy indicator for this evaluation point.
  double eval_with_defect(const Point& x, double* norm_defect) const;
  // Analytic differentiated-kernel gradient; restricted to |x-x0| <= 0.75 r.
  Point gradient(const Point& x) const;
  // d^2/dx_i dx_j of the extension by twice-differentiated kernels (general
  // node-sum route; same |x-x0| <= 0.75 r restriction).
  double second_derivative(const Point& x, int i, int j) const;

  bool grid_zero() const { return all_zero_; }
  double sup_grid_g() const { return gmax_; }
  const Ball& ball() const { return ball_; }
  long node_count() const { return static_cast<long>(g_.size()); }
  bool radial_route() const { return radial_; }

 private:
  struct Ring {
    double rho;
    double wr;  // radial weight incl. jacobian, rho^{n-1}, (rho^2-r^2)^{-s}
    std::size_t offset;
  };

  void build_grid(const QuadBudget& q);
  double tail_J(double a) const;        // int_{Rfar}^inf rho (rho^2-r^2)^{-s} / (rho^2-a^2) drho
  double tail_J_da(double a) const;     // d/da of tail_J
  double tail_J_da2(double a) const;    // d^2/da^2 of tail_J
  double eval_fast(double a2, const Point& x, double* defect) const;
  double eval_near(double a, const Point& x, double* defect) const;
  double eval_radial(double t, double* defect) const;
  const RingInterp& ring_interp(std::size_t i) const;

  ScalarField g_field_;
  Ball ball_;
  Constants k_;
  QuadBudget budget_;
  int n_;
  double s_;
  double rfar_;
  bool tail_zero_ = false;
  double gbar_ = 0.0;
  bool all_zero_ = true;
  double gmax_ = 0.0;

  std::vector<Ring> rings_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<double> w_, g_, wg_;
  std::size_t ring_na_ = 0;

  bool radial_ = false;
  std::unique_ptr<RadialTable> gtab_;

  mutable std::mutex interp_mutex_;
  mutable std::vector<std::unique_ptr<RingInterp>> interps_;
};

}  // namespace fraclap
