#include "fraclap/modulus.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap {
namespace {

// int t^q dt on [a,b], a >= 0; requires q > -1 when a == 0.
double power_primitive_diff(double a, double b, double q) {
  if (std::abs(q + 1.0) < 1e-14) {
    if (a == 0.0) throw_error(error::kind::divergence, "modulus_integral: int t^-1 from 0 diverges");
    return std::log(b / a);
  }
  if (a == 0.0 && q < -1.0)
    throw_error(error::kind::divergence, "modulus_integral: int t^q from 0 diverges");
  double pa = (a == 0.0) ? 0.0 : std::pow(a, q + 1.0);
  return (std::pow(b, q + 1.0) - pa) / (q + 1.0);
}

// int t^q ln(t) dt on [a,b]; the a=0 limit is fine for q > -1.
double power_log_primitive_diff(double a, double b, double q) {
  auto prim = [q](double t) {
    if (t == 0.0) return 0.0;
    if (std::abs(q + 1.0) < 1e-14) {
      double l = std::log(t);
      return 0.5 * l * l;
    }
    double tp = std::pow(t, q + 1.0);
    return tp * (std::log(t) / (q + 1.0) - 1.0 / ((q + 1.0) * (q + 1.0)));
  };
  if (a == 0.0 && q <= -1.0)
    throw_error(error::kind::divergence, "modulus_integral: log integrand diverges at 0");
  return prim(b) - prim(a);
}

// int (c0 + c1 t) t^p dt on [a,b] with a > 0 allowed to be 0 when p > -1.
double linear_times_power(double c0, double c1, double a, double b, double p) {
  double r = 0.0;
  if (c0 != 0.0) r += c0 * power_primitive_diff(a, b, p);
  if (c1 != 0.0) r += c1 * power_primitive_diff(a, b, p + 1.0);
  return r;
}

}  // namespace

ModulusSpec ModulusSpec::power(double C, double alpha, double domain_cap) {
  if (!(C >= 0.0) || !(alpha > 0.0))
    throw_error(error::kind::argument, "ModulusSpec::power: need C >= 0, alpha > 0");
  if (!(domain_cap > 0.0))
    throw_error(error::kind::argument, "ModulusSpec: domain_cap must be positive");
  ModulusSpec m;
  m.kind_ = kind::power;
  m.C_ = C;
  m.alpha_ = alpha;
  m.cap_ = domain_cap;
  return m;
}

ModulusSpec ModulusSpec::log_lipschitz(double C, double domain_cap) {
  if (!(C >= 0.0))
    throw_error(error::kind::argument, "ModulusSpec::log_lipschitz: need C >= 0");
  if (!(domain_cap > 0.0))
    throw_error(error::kind::argument, "ModulusSpec: domain_cap must be positive");
  ModulusSpec m;
  m.kind_ = kind::log_lipschitz;
  m.C_ = C;
  m.cap_ = domain_cap;
  return m;
}

ModulusSpec ModulusSpec::empirical(std::vector<std::pair<double, double>> samples,
                                   double domain_cap) {
  if (samples.empty())
    throw_error(error::kind::argument, "ModulusSpec::empirical: no samples");
  if (!(domain_cap > 0.0))
    throw_error(error::kind::argument, "ModulusSpec: domain_cap must be positive");
  std::sort(samples.begin(), samples.end());
  double run = 0.0;
  for (auto& [t, w] : samples) {
    if (t < 0.0 || w < 0.0)
      throw_error(error::kind::argument, "ModulusSpec::empirical: negative entry");
    run = std::max(run, w);
    w = run;  // running maximum: enforce monotonicity
  }
  ModulusSpec m;
  m.kind_ = kind::empirical;
  m.cap_ = domain_cap;
  m.samples_ = std::move(samples);
  return m;
}

double ModulusSpec::eval(double t) const {
  if (t < 0.0) throw_error(error::kind::argument, "modulus_eval: t < 0");
  if (t > cap_ * (1.0 + 1e-12))
    throw_error(error::kind::domain, "modulus_eval: t exceeds domain_cap");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case kind::power:
      return C_ * std::pow(t, alpha_);
    case kind::log_lipschitz:
      return C_ * t * (1.0 + std::abs(std::log(t)));
    case kind::empirical: {
      // linear interpolation of the monotonized samples, pinned at (0,0),
      // constant beyond the last sample
      double t0 = 0.0, w0 = 0.0;
      for (const auto& [ts, ws] : samples_) {
        if (t <= ts) {
          if (ts == t0) return ws;
          return w0 + (ws - w0) * (t - t0) / (ts - t0);
        }
        t0 = ts;
        w0 = ws;
      }
      return w0;
    }
  }
  return 0.0;
}

double ModulusSpec::integral(double a, double b, double p) const {
  if (!(0.0 <= a) || !(a < b))
    throw_error(error::kind::argument, "modulus_integral: need 0 <= a < b");
  if (b > cap_ * (1.0 + 1e-12))
    throw_error(error::kind::domain, "modulus_integral: b exceeds domain_cap");
  switch (kind_) {
    case kind::power: {
      if (a == 0.0 && alpha_ + p <= -1.0)
        throw_error(error::kind::divergence,
                    "modulus_integral: omega(t) t^p not integrable at 0 (alpha+p <= -1)");
      return C_ * power_primitive_diff(a, b, alpha_ + p);
    }
    case kind::log_lipschitz: {
      // omega(t) t^p = C t^{p+1} (1 + |ln t|); |ln t| switches sign at t=1
      if (a == 0.0 && p + 1.0 <= -1.0)
        throw_error(error::kind::divergence, "modulus_integral: not integrable at 0");
      auto piece = [this, p](double lo, double hi) {
        double sgn = (hi <= 1.0) ? -1.0 : 1.0;  // |ln t| = sgn * ln t on the piece
        return C_ * (power_primitive_diff(lo, hi, p + 1.0) +
                     sgn * power_log_primitive_diff(lo, hi, p + 1.0));
      };
      if (b <= 1.0 || a >= 1.0) return piece(a, b);
      return piece(a, 1.0) + piece(1.0, b);
    }
    case kind::empirical: {
      // exact integration of the piecewise-linear interpolant against t^p
      if (a == 0.0 && p <= -2.0)
        throw_error(error::kind::divergence, "modulus_integral: not integrable at 0");
      double total = 0.0;
      double t0 = 0.0, w0 = 0.0;
      auto add_piece = [&](double t1, double w1) {
        double lo = std::max(a, t0), hi = std::min(b, t1);
        if (lo < hi && t1 > t0) {
          double slope = (w1 - w0) / (t1 - t0);
          total += linear_times_power(w0 - slope * t0, slope, lo, hi, p);
        }
      };
      for (const auto& [ts, ws] : samples_) {
        add_piece(ts, ws);
        t0 = ts;
        w0 = ws;
      }
      if (t0 < b) {  // constant tail
        double lo = std::max(a, t0);
        if (lo < b) total += linear_times_power(w0, 0.0, lo, b, p);
      }
      return total;
    }
  }
  return 0.0;
}

}  // namespace fraclap
