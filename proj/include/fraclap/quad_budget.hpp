#pragma once

#include "fraclap/errors.hpp"

namespace fraclap {

// Node-count and truncation hints for the singular-integral engines.
// Budgets are hints, not hard shapes: every engine accepts doubled node
// counts, and refinement may exceed the base counts up to max_refinements.
struct QuadBudget {
  int radial_nodes = 16;          // Gauss-Legendre nodes per radial panel
  int angular_nodes = 64;         // points on the circle / sphere rule size
  double truncation_radius = 50;  // R_max
  double inner_cutoff = 1e-3;     // eps_in for the second-difference split
  double target_rel_tol = 1e-6;
  int max_refinements = 3;

  void validate() const {
    if (radial_nodes < 2 || angular_nodes < 4)
      throw_error(error::kind::argument, "QuadBudget: node counts too small");
    if (!(inner_cutoff > 0.0) || !(inner_cutoff < 1.0))
      throw_error(error::kind::argument, "QuadBudget: inner_cutoff must be in (0,1)");
    if (!(truncation_radius > 10.0))
      throw_error(error::kind::argument, "QuadBudget: truncation_radius must exceed 10");
    if (!(target_rel_tol > 0.0))
      throw_error(error::kind::argument, "QuadBudget: target_rel_tol must be positive");
    if (max_refinements < 0)
      throw_error(error::kind::argument, "QuadBudget: max_refinements must be >= 0");
  }

  QuadBudget refined(int level) const {
    QuadBudget b = *this;
    b.radial_nodes <<= level;
    b.angular_nodes <<= level;
    return b;
  }
};

}  // namespace fraclap
