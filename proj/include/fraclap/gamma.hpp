#pragma once

namespace fraclap {

// Gamma function via a Lanczos approximation (g = 7, 9 terms), better than
// 1e-13 relative over the range used here.  Negative non-integer arguments go
// through the reflection formula.
double gamma_fn(double x);
double log_gamma(double x);  // log |Gamma(x)|, x > 0

// |Gamma(-s)| for s in (0,1), via reflection: pi / (sin(pi s) Gamma(1+s)).
double abs_gamma_neg(double s);

}  // namespace fraclap
