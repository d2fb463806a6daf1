#pragma once

#include <cstdint>
#include <vector>

#include "fraclap/scalar_field.hpp"

namespace fraclap {

// Bounded degree-0 homogeneous exterior data h(y/|y|) with seeded random
// low-order Fourier coefficients.  Scale-free data makes the derivative
// estimate of the extension attain its r^{-|alpha|} rate at every radius,
// which is what the scaling verifiers probe.
std::vector<ScalarField> random_angular_family(int dim, int count, std::uint64_t seed);

// Default right-hand-side family for the sup-norm lemma: {1, cos(x1), |x|^{1/2}}.
std::vector<ScalarField> default_rhs_family(int dim);

}  // namespace fraclap
