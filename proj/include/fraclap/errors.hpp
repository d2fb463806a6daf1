#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

// Single exception type with a machine-checkable kind, so callers (and tests)
// can distinguish contract violations without a class per failure mode.
class error : public std::runtime_error {
 public:
  enum class kind {
    argument,        // bad argument value (negative t, empty samples, ...)
    domain,          // point outside the geometric domain of an operation
    divergence,      // non-integrable configuration requested
    singularity,     // kernel evaluated at its singular point
    unsupported,     // input outside the supported class (non-compact f, ...)
    tail_unbounded,  // global field without a decay envelope
    evaluation,      // expression evaluated outside its numeric domain
    resolution,      // geometry too small for the quadrature budget
    conditioning,    // evaluation point in an ill-conditioned regime
    depth,           // cascade depth too large for the budget
    config,          // config file / CLI schema violation
    io,              // file read/write failure
  };

  error(kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  kind which() const noexcept { return kind_; }

 private:
  kind kind_;
};

[[noreturn]] inline void throw_error(error::kind k, const std::string& msg) {
  throw error(k, msg);
}

}  // namespace fraclap
