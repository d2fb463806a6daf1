#pragma once

#include "fraclap/constants.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

// Phi(x) = a(n,s) |x|^{2s-n}, the fundamental solution of (-Delta)^s.
double fundamental_solution(const Point& x, const Constants& k);
Point fundamental_solution_gradient(const Point& x, const Constants& k);

// Fractional Poisson kernel of the ball B:
//   P(y,x) = c(n,s) ((r^2-|x-x0|^2)/(|y-x0|^2-r^2))^s |x-y|^{-n}
// for x strictly inside and y strictly outside the closed ball.
double poisson_kernel(const Point& y, const Point& x, const Ball& B, const Constants& k);

// c0 * k(n,s) * r^{2s} * (1 - |x-x0|^2/r^2)^s_+ : solves (-Delta)^s v = c0 in B.
double bubble(const Point& x, const Ball& B, double c0, const Constants& k);
// The same profile packaged as a ScalarField (compactly supported on B).
ScalarField bubble_field(const Ball& B, double c0, const Constants& k);

}  // namespace fraclap
