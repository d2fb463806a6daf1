#pragma once

#include <functional>
#include <vector>

#include "fraclap/errors.hpp"

namespace fraclap {

// Gauss-Legendre rule on [-1,1]; nodes by Newton iteration on P_n, cached per n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Nodes/weights of the n-point rule mapped to [a,b].
void gauss_on_interval(int n, double a, double b, std::vector<double>& x,
                       std::vector<double>& w);

// Panel decomposition of [a,b], geometrically graded toward `a` with ratio
// 1/2: [a, a+h], [a+h, a+2h], [a+2h, a+4h], ... (widths double away from a).
std::vector<double> graded_breakpoints(double a, double b, double first_width);

// Composite Gauss integration of f over the panels given by breakpoints.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int nodes_per_panel);

// Angular rules.  Weights sum to the full angular measure (2*pi resp. 4*pi).
struct AngularRule {
  // unit direction components; z empty for the circle rule
  std::vector<double> x, y, z;
  std::vector<double> w;
  std::size_t size() const { return w.size(); }
};

// Midpoint (trapezoid) rule on the circle with n points.
AngularRule circle_rule(int n);
// Product Gauss(cos theta) x uniform(phi) rule on S^2 with at least n points.
AngularRule sphere_rule(int n);
const AngularRule& angular_rule_cached(int dim, int n);

}  // namespace fraclap
