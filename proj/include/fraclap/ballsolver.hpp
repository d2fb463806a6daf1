#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/engines.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/quad_budget.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

// (-Delta)^s u = rhs in ball, u = exterior outside (pointwise sense).
struct DirichletProblem {
  Ball ball;
  ScalarField rhs;       // defined on the closure of the ball
  ScalarField exterior;  // defined on R^n \ ball; bounded, with envelope or support
  FracOrder order;
};

struct ResidualReport {
  struct Row {
    Point x;
    double residual;
  };
  std::vector<Row> rows;
  double tolerance = 0.0;
  bool passed = false;
};

class SolutionCore;

// Memoized pointwise solution evaluator (inner part).  Copies share the memo;
// reads and first-writes are safe from any number of threads.
class SolutionField {
 public:
  SolutionField() = default;
  explicit SolutionField(std::shared_ptr<SolutionCore> core) : core_(std::move(core)) {}

  bool valid() const { return core_ != nullptr; }
  double eval(const Point& x) const;
  Point gradient(const Point& x) const;
  bool has_gradient() const;

  // The inner evaluator viewed as a ScalarField (memo shared).
  ScalarField inner_field() const;
  // inner inside the domain ball, the problem's exterior data outside.
  ScalarField full_field() const;

  const Ball& domain() const;
  const std::optional<DirichletProblem>& problem() const;
  bool radial() const;

  const std::optional<ResidualReport>& residual_probe() const;
  void set_residual_probe(ResidualReport r);

 private:
  std::shared_ptr<SolutionCore> core_;
};

// Assemble a SolutionField from explicit evaluators (memoization added by the
// wrapper); used by the cascade for its per-level solutions.
SolutionField make_solution_field(int dim, Ball domain,
                                  std::function<double(const Point&)> eval,
                                  std::function<Point(const Point&)> grad,
                                  std::optional<DirichletProblem> problem, bool radial,
                                  std::optional<SmoothnessHint> hint,
                                  std::optional<DecayEnvelope> envelope);

// Poisson extension of g into B: s-harmonic in B with exterior data g.
SolutionField poisson_extend(const ScalarField& g, const Ball& B, const Constants& k,
                             const QuadBudget& q);

// Gradient of the Poisson extension by the analytically differentiated
// kernel; restricted to |x - x0| <= 0.75 r.
Point poisson_extend_gradient(const ScalarField& g, const Point& x, const Ball& B,
                              const Constants& k, const QuadBudget& q);

// Continuous extension of f (given on the closed unit ball) by radial
// projection times the C^1 cubic cutoff: ftilde = f(x / max(1,|x|)) chi(|x|),
// equal to f in B_1, zero outside B_{3/2}, sup-norm preserved.  epsilon is
// f's Holder exponent, carried into the smoothness hint of the result.
ScalarField holder_extension(const ScalarField& f, double epsilon);

// The construction u = utilde - P[utilde outside B] + P[exterior] with
// utilde = ftilde * Phi.
SolutionField solve_dirichlet(const DirichletProblem& p, const Constants& k,
                              const QuadBudget& q);

// max |u| over a quasi-uniform (Halton) sample of grid^n points of B; the
// sample is a prefix sequence, so the result is nondecreasing in grid.
double sup_norm(const SolutionField& u, const Ball& B, int grid);
double sup_norm_field(const ScalarField& u, const Ball& B, int grid);

// Fractional-Laplacian residual |(-Delta)^s u - rhs| at the default interior
// probes {0, +-0.25 e1, +-0.25 e2} scaled by the ball radius.
ResidualReport residual_probe_report(const SolutionField& u, const Constants& k,
                                     const QuadBudget& q);

}  // namespace fraclap
