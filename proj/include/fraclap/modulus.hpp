#pragma once

#include <utility>
#include <vector>

#include "fraclap/errors.hpp"

namespace fraclap {

// Modulus of continuity omega(t) = sup_{|x-y|<t} |f(x)-f(y)|.
// Three kinds: power C*t^alpha, log-Lipschitz C*t*(1+|ln t|), and empirical
// (sampled pairs, monotonized by running maxima since omega is nondecreasing
// by definition while raw sampled sups need not be).
class ModulusSpec {
 public:
  enum class kind { power, log_lipschitz, empirical };

  static ModulusSpec power(double C, double alpha, double domain_cap = 2.0);
  static ModulusSpec log_lipschitz(double C, double domain_cap = 2.0);
  static ModulusSpec empirical(std::vector<std::pair<double, double>> samples,
                               double domain_cap = 2.0);

  kind which() const { return kind_; }
  double coefficient() const { return C_; }
  double exponent() const { return alpha_; }
  double domain_cap() const { return cap_; }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

  // omega(t) for 0 <= t <= domain_cap.
  double eval(double t) const;

  // int_a^b omega(t) t^p dt.  Closed forms for power / log_lipschitz kinds,
  // exact piecewise integration of the linear interpolant for empirical.
  // Requires 0 <= a < b <= domain_cap and integrability at a = 0.
  double integral(double a, double b, double p) const;

 private:
  ModulusSpec() = default;
  kind kind_ = kind::power;
  double C_ = 1.0;
  double alpha_ = 1.0;
  double cap_ = 2.0;
  std::vector<std::pair<double, double>> samples_;
};

inline double modulus_eval(const ModulusSpec& m, double t) { return m.eval(t); }
inline double modulus_integral(const ModulusSpec& m, double a, double b, double p) {
  return m.integral(a, b, p);
}

}  // namespace fraclap
