#include "fraclap/constants.hpp"

#include <cmath>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"

namespace fraclap {

Constants Constants::make(int n, double s) {
  if (n < 2) throw_error(error::kind::argument, "Constants: need n >= 2");
  FracOrder order(s);
  double hn = 0.5 * n;
  double pow4s = std::pow(4.0, s);
  double pin2 = std::pow(M_PI, hn);

  Constants k{
      n,
      order,
      /*riesz_a=*/gamma_fn(hn - s) / (pow4s * pin2 * gamma_fn(s)),
      /*poisson_c=*/gamma_fn(hn) * std::sin(M_PI * s) / std::pow(M_PI, hn + 1.0),
      /*flap_C=*/pow4s * gamma_fn(hn + s) / (pin2 * abs_gamma_neg(s)),
      /*bubble_k=*/gamma_fn(hn) / (pow4s * gamma_fn(hn + s) * gamma_fn(1.0 + s)),
  };
  if (!(k.riesz_a > 0.0) || !(k.poisson_c > 0.0) || !(k.flap_C > 0.0) || !(k.bubble_k > 0.0))
    throw_error(error::kind::argument, "Constants: non-positive dimensional constant");
  return k;
}

}  // namespace fraclap
