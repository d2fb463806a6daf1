#pragma once

#include "fraclap/constants.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/quad_budget.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

struct EngineResult {
  double value = 0.0;
  double est_error = 0.0;  // engineering estimate: refinement delta + tail bounds
  long nodes_used = 0;
  int refinements = 0;
};

// Pointwise (-Delta)^s u(x) through the symmetrized second-difference form
//   (C(n,s)/2) int (2u(x) - u(x-y) - u(x+y)) |y|^{-n-2s} dy
// split into inner ball (direct evaluation of the second difference under the
// singular weight), middle shell (radial-angular product rule on panels graded
// toward the cutoff), and an analytic tail model beyond the truncation radius.
// Requires a smoothness hint of at least holder(2s) near x and, for fields
// without compact support, a decay envelope for the tail bound.
EngineResult frac_laplacian(const ScalarField& u, const Point& x, const Constants& k,
                            const QuadBudget& q);

// u(x) = a(n,s) int f(y) |x-y|^{2s-n} dy for compactly supported f; the
// singularity is absorbed by polar coordinates centered at x with a
// power-substituted first panel.
EngineResult riesz_potential(const ScalarField& f, const Point& x, const Constants& k,
                             const QuadBudget& q);

// Du(x) = int grad Phi(x-y) f(y) dy, same polar scheme (the odd angular
// moment restores integrability of the |x-y|^{2s-n-1} kernel).
Point riesz_potential_gradient(const ScalarField& f, const Point& x, const Constants& k,
                               const QuadBudget& q);

// int_{R^n \ B} P_r(y,x) g(y) dy for x strictly inside B.  The boundary
// singularity is removed by the radial substitution rho = r(1+tau^{1/(1-s)});
// the tail beyond the truncation radius uses the exact angular average of the
// kernel against the far-field mean of g.
EngineResult exterior_poisson_integral(const ScalarField& g, const Point& x, const Ball& B,
                                       const Constants& k, const QuadBudget& q);

}  // namespace fraclap
