#include "fraclap/gamma.hpp"

#include <cmath>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's table).
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_positive(double x) {
  // Gamma(x) for x >= 0.5
  double a = kCoef[0];
  double t = x + kG - 0.5;
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (x - 1.0 + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
  if (x >= 0.5) return lanczos_positive(x);
  if (x == std::floor(x))
    throw_error(error::kind::singularity, "gamma_fn: pole at non-positive integer");
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return M_PI / (std::sin(M_PI * x) * lanczos_positive(1.0 - x));
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw_error(error::kind::argument, "log_gamma: need x > 0");
  if (x >= 0.5) {
    double a = kCoef[0];
    double t = x + kG - 0.5;
    for (int i = 1; i < 9; ++i) a += kCoef[i] / (x - 1.0 + i);
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(a);
  }
  return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
}

double abs_gamma_neg(double s) {
  if (!(s > 0.0) || !(s < 1.0))
    throw_error(error::kind::argument, "abs_gamma_neg: need s in (0,1)");
  return M_PI / (std::sin(M_PI * s) * gamma_fn(1.0 + s));
}

}  // namespace fraclap
