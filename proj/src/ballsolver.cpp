#include "fraclap/ballsolver.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "fraclap/interp.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/poisson_ext.hpp"
#include "fraclap/probes.hpp"

namespace fraclap {

namespace {

struct MemoKey {
  std::int64_t a, b, c;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.a, k.b, k.c}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

MemoKey key_of(const Point& p) {
  auto snap = [](double v) { return static_cast<std::int64_t>(std::llround(v * 1e12)); };
  return {snap(p[0]), snap(p[1]), p.dim() >= 3 ? snap(p[2]) : 0};
}

}  // namespace

class SolutionCore {
 public:
  std::function<double(const Point&)> eval_fn;
  std::function<Point(const Point&)> grad_fn;
  Ball domain{Point::zero(2), 1.0};
  std::optional<DirichletProblem> problem;
  std::optional<ResidualReport> residual;
  std::optional<SmoothnessHint> hint;
  std::optional<DecayEnvelope> envelope;
  bool radial = false;
  int dim = 2;

  double eval_memo(const Point& x) const {
    MemoKey k = key_of(x);
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(k);
      if (it != memo_.end()) return it->second;
    }
    double v = eval_fn(x);
    {
      std::unique_lock lock(mutex_);
      memo_.emplace(k, v);  // deterministic value: last-write-wins is fine
    }
    return v;
  }

  Point grad_memo(const Point& x) const {
    MemoKey k = key_of(x);
    {
      std::shared_lock lock(mutex_);
      auto it = gmemo_.find(k);
      if (it != gmemo_.end()) return it->second;
    }
    Point v = grad_fn(x);
    {
      std::unique_lock lock(mutex_);
      gmemo_.emplace(k, v);
    }
    return v;
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<MemoKey, double, MemoKeyHash> memo_;
  mutable std::unordered_map<MemoKey, Point, MemoKeyHash> gmemo_;
};

namespace {

class SolutionFieldImpl : public FieldImpl {
 public:
  explicit SolutionFieldImpl(std::shared_ptr<SolutionCore> core) : core_(std::move(core)) {}
  double eval(const double* x, int n) const override {
    return core_->eval_memo(Point(std::vector<double>(x, x + n)));
  }
  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m, int n) const override {
    parallel_for(m, [&](std::size_t i) {
      double p[3] = {xs[i], ys[i], n >= 3 ? zs[i] : 0.0};
      out[i] = core_->eval_memo(Point(std::vector<double>(p, p + n)));
    });
  }

 private:
  std::shared_ptr<SolutionCore> core_;
};

class CompositeFullImpl : public FieldImpl {
 public:
  CompositeFullImpl(std::shared_ptr<SolutionCore> core, ScalarField exterior)
      : core_(std::move(core)), exterior_(std::move(exterior)) {}
  double eval(const double* x, int n) const override {
    Point p(std::vector<double>(x, x + n));
    if (core_->domain.contains(p)) return core_->eval_memo(p);
    return exterior_(p);
  }

 private:
  std::shared_ptr<SolutionCore> core_;
  ScalarField exterior_;
};

}  // namespace

double SolutionField::eval(const Point& x) const { return core_->eval_memo(x); }

Point SolutionField::gradient(const Point& x) const {
  if (!core_->grad_fn)
    throw_error(error::kind::unsupported, "SolutionField: gradient not available");
  return core_->grad_memo(x);
}

bool SolutionField::has_gradient() const { return static_cast<bool>(core_->grad_fn); }

ScalarField SolutionField::inner_field() const {
  ScalarField f(std::make_shared<SolutionFieldImpl>(core_), core_->dim);
  if (core_->hint) f = f.with_smoothness(*core_->hint);
  if (core_->envelope) f = f.with_decay(*core_->envelope);
  return f.with_radial(core_->radial);
}

ScalarField SolutionField::full_field() const {
  ScalarField ext = core_->problem ? core_->problem->exterior
                                   : ScalarField::constant(core_->dim, 0.0);
  ScalarField f(std::make_shared<CompositeFullImpl>(core_, ext), core_->dim);
  if (core_->hint) f = f.with_smoothness(*core_->hint);
  if (core_->envelope) f = f.with_decay(*core_->envelope);
  return f.with_radial(core_->radial && ext.radial_about_origin() &&
                       core_->domain.center().norm() == 0.0);
}

const Ball& SolutionField::domain() const { return core_->domain; }
const std::optional<DirichletProblem>& SolutionField::problem() const { return core_->problem; }
bool SolutionField::radial() const { return core_->radial; }
const std::optional<ResidualReport>& SolutionField::residual_probe() const {
  return core_->residual;
}
void SolutionField::set_residual_probe(ResidualReport r) { core_->residual = std::move(r); }

SolutionField make_solution_field(int dim, Ball domain,
                                  std::function<double(const Point&)> eval,
                                  std::function<Point(const Point&)> grad,
                                  std::optional<DirichletProblem> problem, bool radial,
                                  std::optional<SmoothnessHint> hint,
                                  std::optional<DecayEnvelope> envelope) {
  auto core = std::make_shared<SolutionCore>();
  core->dim = dim;
  core->domain = std::move(domain);
  core->eval_fn = std::move(eval);
  core->grad_fn = std::move(grad);
  core->problem = std::move(problem);
  core->radial = radial;
  core->hint = hint;
  core->envelope = envelope;
  return SolutionField(core);
}

SolutionField poisson_extend(const ScalarField& g, const Ball& B, const Constants& k,
                             const QuadBudget& q) {
  auto ext = std::make_shared<PoissonExtension>(g, B, k, q);
  auto core = std::make_shared<SolutionCore>();
  core->domain = B;
  core->dim = k.n;
  core->radial = ext->radial_route();
  core->hint = SmoothnessHint::c1();  // s-harmonic functions are smooth inside
  core->envelope = DecayEnvelope{ext->sup_grid_g(), 0.0};
  core->problem = DirichletProblem{B, ScalarField::constant(k.n, 0.0), g, k.s};
  core->eval_fn = [ext](const Point& x) { return ext->eval(x); };
  core->grad_fn = [ext](const Point& x) { return ext->gradient(x); };
  return SolutionField(core);
}

Point poisson_extend_gradient(const ScalarField& g, const Point& x, const Ball& B,
                              const Constants& k, const QuadBudget& q) {
  PoissonExtension ext(g, B, k, q);
  return ext.gradient(x);
}

namespace {

// chi: 1 on [0,1], cubic ramp down to 0 on [1, 3/2]
double cubic_cutoff(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 1.5) return 0.0;
  double u = (t - 1.0) * 2.0;
  return 1.0 - 3.0 * u * u + 2.0 * u * u * u;
}

class HolderExtensionImpl : public FieldImpl {
 public:
  explicit HolderExtensionImpl(ScalarField f) : f_(std::move(f)) {}
  double eval(const double* x, int n) const override {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    double r = std::sqrt(r2);
    if (r >= 1.5) return 0.0;
    double chi = cubic_cutoff(r);
    if (r <= 1.0) return f_.eval_coords(x) * chi;
    double proj[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) proj[i] = x[i] / r;
    return f_.eval_coords(proj) * chi;
  }

 private:
  ScalarField f_;
};

}  // namespace

ScalarField holder_extension(const ScalarField& f, double epsilon) {
  ScalarField ext(std::make_shared<HolderExtensionImpl>(f), f.dim());
  ext = ext.with_support(Ball(Point::zero(f.dim()), 1.5))
            .with_radial(f.radial_about_origin());
  if (epsilon > 0.0)
    ext = ext.with_smoothness(SmoothnessHint::holder(std::min(epsilon, 1.0)));
  return ext;
}

namespace {

// memoized pointwise Riesz potential of a compactly supported field, with a
// radial Chebyshev table when the data allows it
class RieszField {
 public:
  RieszField(ScalarField f, const Constants& k, const QuadBudget& q, double table_hi)
      : f_(std::move(f)), k_(k), q_(q) {
    if (f_.radial_about_origin()) {
      double edge = f_.support() ? f_.support()->radius() : 1.0;
      RadialTable::BatchFn prof = [this](const std::vector<double>& xs,
                                         std::vector<double>& out) {
        out.resize(xs.size());
        parallel_for(xs.size(), [&](std::size_t i) {
          out[i] = riesz_potential(f_, Point::axis(k_.n, 0, xs[i]), k_, q_).value;
        });
      };
      // the table tolerance must sit above the engine's own noise floor
      double tol = std::max(1e-8, 3.0 * q.target_rel_tol);
      double scale = riesz_potential(f_, Point::zero(k.n), k, q).value;
      table_ = std::make_unique<RadialTable>(
          prof, 0.0, table_hi, std::vector<double>{0.0, 0.5 * edge, edge}, tol, 12,
          std::abs(scale));
    }
  }

  bool radial() const { return table_ != nullptr; }

  double eval(const Point& x) const {
    if (table_) {
      double r = x.norm();
      if (r <= table_->upper()) return table_->eval(r);
    }
    return riesz_potential(f_, x, k_, q_).value;
  }

  Point gradient(const Point& x) const { return riesz_potential_gradient(f_, x, k_, q_); }

 private:
  ScalarField f_;
  Constants k_;
  QuadBudget q_;
  std::unique_ptr<RadialTable> table_;
};

class RieszFieldImpl : public FieldImpl {
 public:
  explicit RieszFieldImpl(std::shared_ptr<RieszField> rf) : rf_(std::move(rf)) {}
  double eval(const double* x, int n) const override {
    return rf_->eval(Point(std::vector<double>(x, x + n)));
  }
  void eval_batch(const double* xs, const double* ys, const double* zs, double* out,
                  std::size_t m, int n) const override {
    parallel_for(m, [&](std::size_t i) {
      double p[3] = {xs[i], ys[i], n >= 3 ? zs[i] : 0.0};
      out[i] = rf_->eval(Point(std::vector<double>(p, p + n)));
    });
  }

 private:
  std::shared_ptr<RieszField> rf_;
};

class RescaledRhsImpl : public FieldImpl {
 public:
  RescaledRhsImpl(ScalarField f, Point center, double r)
      : f_(std::move(f)), c_(std::move(center)), r_(r) {}
  double eval(const double* z, int n) const override {
    double p[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) p[i] = c_[i] + r_ * z[i];
    return f_.eval_coords(p);
  }

 private:
  ScalarField f_;
  Point c_;
  double r_;
};

class UnitToBallImpl : public FieldImpl {
 public:
  UnitToBallImpl(ScalarField f, Point center, double r)
      : f_(std::move(f)), c_(std::move(center)), r_(r) {}
  double eval(const double* y, int n) const override {
    double z[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) z[i] = (y[i] - c_[i]) / r_;
    return f_.eval_coords(z);
  }

 private:
  ScalarField f_;
  Point c_;
  double r_;
};

double sample_sup(const ScalarField& f, const Ball& B, int count) {
  std::vector<Point> pts = halton_ball_points(B, static_cast<std::size_t>(count), 0);
  double m = std::abs(f(B.center()));
  for (const auto& p : pts) m = std::max(m, std::abs(f(p)));
  return m;
}

}  // namespace

SolutionField solve_dirichlet(const DirichletProblem& p, const Constants& k,
                              const QuadBudget& q) {
  q.validate();
  if (p.rhs.dim() != k.n || p.exterior.dim() != k.n || p.ball.dim() != k.n)
    throw_error(error::kind::argument, "solve_dirichlet: dimension mismatch");
  if (std::abs(p.order.value() - k.s.value()) > 1e-14)
    throw_error(error::kind::argument, "solve_dirichlet: problem order differs from constants");

  const Ball& B = p.ball;
  const double r = B.radius();
  const bool centered = B.center().norm() == 0.0;

  double sup_f = sample_sup(p.rhs, B, 512);

  auto core = std::make_shared<SolutionCore>();
  core->domain = B;
  core->dim = k.n;
  core->problem = p;

  // exterior part (skipped entirely when the grid sees only zeros)
  std::shared_ptr<PoissonExtension> ext_g = std::make_shared<PoissonExtension>(
      field_outside(p.exterior, B), B, k, q);
  bool g_zero = ext_g->grid_zero();

  if (sup_f == 0.0) {
    // u = P[g]; the construction collapses since ftilde == 0
    core->radial = ext_g->radial_route();
    core->hint = SmoothnessHint::c1();
    core->envelope = DecayEnvelope{ext_g->sup_grid_g(), 0.0};
    if (g_zero) {
      core->eval_fn = [](const Point&) { return 0.0; };
      core->grad_fn = [nn = k.n](const Point&) { return Point::zero(nn); };
    } else {
      core->eval_fn = [ext_g](const Point& x) { return ext_g->eval(x); };
      core->grad_fn = [ext_g](const Point& x) { return ext_g->gradient(x); };
    }
    return SolutionField(core);
  }

  // ftilde on the rescaled ball: f_unit(z) = f(x0 + r z), extended, mapped back
  ScalarField f_unit(std::make_shared<RescaledRhsImpl>(p.rhs, B.center(), r), k.n);
  f_unit = f_unit.with_radial(p.rhs.radial_about_origin() && centered);
  double eps_f = 0.05;
  if (p.rhs.smoothness() && p.rhs.smoothness()->kind != SmoothnessHint::label::bounded)
    eps_f = std::min(1.0, p.rhs.smoothness()->alpha);
  ScalarField ftilde_unit = holder_extension(f_unit, eps_f);
  ScalarField ftilde(std::make_shared<UnitToBallImpl>(ftilde_unit, B.center(), r), k.n);
  ftilde = ftilde.with_support(Ball(B.center(), 1.5 * r))
               .with_radial(ftilde_unit.radial_about_origin() && centered)
               .with_decay(DecayEnvelope{sup_f, 0.0});

  const double s = k.s.value();
  double rfar = std::max(q.truncation_radius, 4.0 * r);
  auto riesz = std::make_shared<RieszField>(ftilde, k, q, rfar * 1.05);
  ScalarField utilde(std::make_shared<RieszFieldImpl>(riesz), k.n);
  double sigma = k.n == 2 ? 2.0 * M_PI : 4.0 * M_PI;
  double u_amp = k.riesz_a * sup_f * sigma * std::pow(1.5 * r, 2.0 * s) / (2.0 * s);
  utilde = utilde.with_decay(DecayEnvelope{u_amp, k.n - 2.0 * s})
               .with_radial(riesz->radial());

  auto ext_u = std::make_shared<PoissonExtension>(field_outside(utilde, B), B, k, q);

  core->radial = riesz->radial() && ext_u->radial_route() &&
                 (g_zero || ext_g->radial_route());
  double a2s = 2.0 * s + eps_f;
  core->hint = a2s >= 2.0 ? SmoothnessHint::c1()
                          : SmoothnessHint::holder(std::min(a2s, 2.0));
  core->envelope = DecayEnvelope{u_amp + ext_u->sup_grid_g() + ext_g->sup_grid_g(), 0.0};

  if (g_zero) {
    core->eval_fn = [riesz, ext_u](const Point& x) {
      return riesz->eval(x) - ext_u->eval(x);
    };
    core->grad_fn = [riesz, ext_u](const Point& x) {
      Point g1 = riesz->gradient(x);
      Point g2 = ext_u->gradient(x);
      return g1 - g2;
    };
  } else {
    core->eval_fn = [riesz, ext_u, ext_g](const Point& x) {
      return riesz->eval(x) - ext_u->eval(x) + ext_g->eval(x);
    };
    core->grad_fn = [riesz, ext_u, ext_g](const Point& x) {
      Point g1 = riesz->gradient(x);
      Point g2 = ext_u->gradient(x);
      Point g3 = ext_g->gradient(x);
      return g1 - g2 + g3;
    };
  }
  return SolutionField(core);
}

double sup_norm_field(const ScalarField& u, const Ball& B, int grid) {
  if (grid < 8) throw_error(error::kind::argument, "sup_norm: grid must be >= 8");
  std::size_t count = 1;
  for (int i = 0; i < B.dim(); ++i) count *= static_cast<std::size_t>(grid);
  // prefix of a fixed Halton sequence plus the center: nondecreasing in grid
  std::vector<Point> pts = halton_ball_points(B, count, 0);
  pts.push_back(B.center());
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = std::abs(u(pts[i])); });
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m;
}

double sup_norm(const SolutionField& u, const Ball& B, int grid) {
  return sup_norm_field(u.inner_field(), B, grid);
}

ResidualReport residual_probe_report(const SolutionField& u, const Constants& k,
                                     const QuadBudget& q) {
  if (!u.problem())
    throw_error(error::kind::argument, "residual_probe_report: no problem attached");
  const DirichletProblem& p = *u.problem();
  const double r = p.ball.radius();
  ResidualReport rep;
  double sup_f = sample_sup(p.rhs, p.ball, 256);
  rep.tolerance = 1e-2 * (sup_f + 1.0);
  ScalarField full = u.full_field();
  std::vector<Point> probes{p.ball.center()};
  for (int axis = 0; axis < std::min(2, k.n); ++axis)
    for (double sgn : {1.0, -1.0}) {
      Point q2 = p.ball.center();
      q2[axis] += sgn * 0.25 * r;
      probes.push_back(q2);
    }
  rep.passed = true;
  for (const auto& x : probes) {
    double lap = frac_laplacian(full, x, k, q).value;
    double res = lap - p.rhs(x);
    rep.rows.push_back({x, res});
    if (std::abs(res) > rep.tolerance) rep.passed = false;
  }
  return rep;
}

}  // namespace fraclap
