#pragma once

#include "fraclap/frac_order.hpp"

namespace fraclap {

// The four dimensional constants of the kernel formulas:
//   flap_C    : C(n,s)  in (-Delta)^s u = C(n,s) P.V. int (u(x)-u(x-y)) |y|^{-n-2s} dy
//   poisson_c : c(n,s)  normalizing int_{R^n \ B_r} P_r(y,x) dy = 1
//   riesz_a   : a(n,s)  in Phi(x) = a(n,s) |x|^{2s-n}
//   bubble_k  : k(n,s)  in the solution k(n,s)(1-|x|^2)^s_+ of (-Delta)^s v = 1 in B_1
// The defining properties (the Poisson normalization, the Fourier symbol, the
// bubble identity) are exercised numerically by the acceptance suite.
struct Constants {
  int n;
  FracOrder s;
  double riesz_a;
  double poisson_c;
  double flap_C;
  double bubble_k;

  static Constants make(int n, double s);
};

}  // namespace fraclap
