#pragma once

#include "fraclap/errors.hpp"

namespace fraclap {

// The fractional order s of (-Delta)^s, restricted to the open interval (0,1).
// The two regimes of the Schauder theorem split at s = 1/2.
class FracOrder {
 public:
  enum class regime { subcritical, critical, supercritical };

  explicit FracOrder(double s) : s_(s) {
    if (!(s > 0.0) || !(s < 1.0))
      throw_error(error::kind::argument, "FracOrder: s must lie in (0,1)");
  }

  double value() const { return s_; }
  regime classify() const {
    if (s_ < 0.5) return regime::subcritical;
    if (s_ > 0.5) return regime::supercritical;
    return regime::critical;
  }
  bool gradient_regime() const { return s_ > 0.5; }

 private:
  double s_;
};

}  // namespace fraclap
