#include <algorithm>
#include <cmath>
#include <vector>

#include "fraclap/engines.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap {
namespace {

struct AngularBatch {
  const ScalarField& f;
  const Point& x;
  const AngularRule& ang;
  long evals = 0;
  std::vector<double> xs, ys, zs, vals;

  AngularBatch(const ScalarField& f_, const Point& x_, const AngularRule& ang_)
      : f(f_), x(x_), ang(ang_) {}

  // evaluates f(x + rho_i theta_j) for all i,j; vals laid out ring-major
  void run(const std::vector<double>& radii) {
    const std::size_t na = ang.size(), m = na * radii.size();
    const int n = f.dim();
    xs.resize(m);
    ys.resize(m);
    if (n >= 3) zs.resize(m);
    vals.resize(m);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double rho = radii[i];
      for (std::size_t j = 0; j < na; ++j) {
        const std::size_t q = i * na + j;
        xs[q] = x[0] + rho * ang.x[j];
        ys[q] = x[1] + rho * ang.y[j];
        if (n >= 3) zs[q] = x[2] + rho * ang.z[j];
      }
    }
    f.eval_batch(xs.data(), ys.data(), n >= 3 ? zs.data() : nullptr, vals.data(), m);
    evals += static_cast<long>(m);
  }

  double ring_sum(std::size_t i) const {
    return simd::kernels().dot(ang.w.data(), vals.data() + i * ang.size(), ang.size());
  }
  // sum_j w_j theta_j f_ij for one coordinate axis
  double ring_moment(std::size_t i, int axis) const {
    const double* th = axis == 0 ? ang.x.data() : (axis == 1 ? ang.y.data() : ang.z.data());
    const auto& K = simd::kernels();
    const std::size_t na = ang.size();
    std::vector<double> tmp(na);
    K.mul(th, vals.data() + i * na, tmp.data(), na);
    return K.dot(ang.w.data(), tmp.data(), na);
  }
};

struct RadialLayout {
  std::vector<double> radii, weights;  // plain nodes on [sub_end, rho_hi]
  std::vector<double> sub_t, sub_tw;   // substituted first panel nodes (t-space)
  double sub_end = 0.0;                // 0 if no substituted panel
  double rho_lo = 0.0, rho_hi = 0.0;
};

// Radial node layout for the polar scheme centered at x: a power-substituted
// first panel when x touches the support (rho_lo = 0) and graded panels
// elsewhere.
RadialLayout radial_layout(double rho_lo, double rho_hi, double s, int nr) {
  RadialLayout L;
  L.rho_lo = rho_lo;
  L.rho_hi = rho_hi;
  std::vector<double> xx, ww;
  if (rho_lo == 0.0) {
    L.sub_end = std::min(0.5 * rho_hi, 0.5);
    gauss_on_interval(nr, 0.0, 1.0, L.sub_t, L.sub_tw);
    std::vector<double> breaks = graded_breakpoints(L.sub_end, rho_hi, 0.5 * L.sub_end);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      gauss_on_interval(nr, breaks[p], breaks[p + 1], xx, ww);
      L.radii.insert(L.radii.end(), xx.begin(), xx.end());
      L.weights.insert(L.weights.end(), ww.begin(), ww.end());
    }
  } else {
    std::vector<double> breaks =
        graded_breakpoints(rho_lo, rho_hi, (rho_hi - rho_lo) / 64.0);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      gauss_on_interval(nr, breaks[p], breaks[p + 1], xx, ww);
      L.radii.insert(L.radii.end(), xx.begin(), xx.end());
      L.weights.insert(L.weights.end(), ww.begin(), ww.end());
    }
  }
  (void)s;
  return L;
}

void support_range(const ScalarField& f, const Point& x, double* rho_lo, double* rho_hi) {
  if (!f.support())
    throw_error(error::kind::unsupported, "riesz_potential: f must have compact support");
  double d = dist(x, f.support()->center());
  double rs = f.support()->radius();
  *rho_lo = std::max(0.0, d - rs);
  *rho_hi = d + rs;
}

}  // namespace

EngineResult riesz_potential(const ScalarField& f, const Point& x, const Constants& k,
                             const QuadBudget& q) {
  q.validate();
  if (f.dim() != k.n || x.dim() != k.n)
    throw_error(error::kind::argument, "riesz_potential: dimension mismatch");
  const double s = k.s.value();
  double rho_lo, rho_hi;
  support_range(f, x, &rho_lo, &rho_hi);

  EngineResult res;
  double prev = 0.0;
  for (int level = 0;; ++level) {
    const int nr = q.radial_nodes << level;
    const int na = q.angular_nodes << level;
    const AngularRule& ang = angular_rule_cached(k.n, na);
    AngularBatch batch(f, x, ang);
    RadialLayout L = radial_layout(rho_lo, rho_hi, s, nr);

    double total = 0.0;
    if (L.sub_end > 0.0) {
      // int_0^{p0} rho^{2s-1} A(rho) drho = p0^{2s}/(2s) int_0^1 A(p0 t^{1/(2s)}) dt
      std::vector<double> radii(L.sub_t.size());
      for (std::size_t i = 0; i < radii.size(); ++i)
        radii[i] = L.sub_end * std::pow(L.sub_t[i], 1.0 / (2.0 * s));
      batch.run(radii);
      double acc = 0.0;
      for (std::size_t i = 0; i < radii.size(); ++i) acc += L.sub_tw[i] * batch.ring_sum(i);
      total += std::pow(L.sub_end, 2.0 * s) / (2.0 * s) * acc;
    }
    if (!L.radii.empty()) {
      batch.run(L.radii);
      for (std::size_t i = 0; i < L.radii.size(); ++i)
        total += L.weights[i] * std::pow(L.radii[i], 2.0 * s - 1.0) * batch.ring_sum(i);
    }
    double v = k.riesz_a * total;
    res.nodes_used += batch.evals;
    res.refinements = level;
    if (level > 0) {
      double delta = std::abs(v - prev);
      res.value = v;
      res.est_error = delta;
      if (delta <= q.target_rel_tol * std::max(std::abs(v), 1e-14) ||
          level >= q.max_refinements)
        break;
    } else {
      res.value = v;
      if (q.max_refinements == 0) break;
    }
    prev = v;
  }
  return res;
}

Point riesz_potential_gradient(const ScalarField& f, const Point& x, const Constants& k,
                               const QuadBudget& q) {
  q.validate();
  if (f.dim() != k.n || x.dim() != k.n)
    throw_error(error::kind::argument, "riesz_potential_gradient: dimension mismatch");
  const double s = k.s.value();
  const int n = k.n;
  double rho_lo, rho_hi;
  support_range(f, x, &rho_lo, &rho_hi);

  std::vector<double> grad(static_cast<std::size_t>(n), 0.0), prev_grad;
  for (int level = 0;; ++level) {
    const int nr = q.radial_nodes << level;
    const int na = q.angular_nodes << level;
    const AngularRule& ang = angular_rule_cached(n, na);
    AngularBatch batch(f, x, ang);
    RadialLayout L = radial_layout(rho_lo, rho_hi, s, nr);

    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    if (L.sub_end > 0.0) {
      // int_0^{p0} rho^{2s-2} B(rho) drho with B(rho) = O(rho):
      // same substitution against B(rho)/rho
      std::vector<double> radii(L.sub_t.size());
      for (std::size_t i = 0; i < radii.size(); ++i)
        radii[i] = L.sub_end * std::pow(L.sub_t[i], 1.0 / (2.0 * s));
      batch.run(radii);
      double c0 = std::pow(L.sub_end, 2.0 * s) / (2.0 * s);
      for (std::size_t i = 0; i < radii.size(); ++i)
        for (int ax = 0; ax < n; ++ax)
          acc[static_cast<std::size_t>(ax)] +=
              c0 * L.sub_tw[i] * batch.ring_moment(i, ax) / radii[i];
    }
    if (!L.radii.empty()) {
      batch.run(L.radii);
      for (std::size_t i = 0; i < L.radii.size(); ++i) {
        double wr = L.weights[i] * std::pow(L.radii[i], 2.0 * s - 2.0);
        for (int ax = 0; ax < n; ++ax)
          acc[static_cast<std::size_t>(ax)] += wr * batch.ring_moment(i, ax);
      }
    }
    for (int ax = 0; ax < n; ++ax)
      acc[static_cast<std::size_t>(ax)] *= k.riesz_a * (n - 2.0 * s);

    if (level > 0) {
      double delta = 0.0, mag = 0.0;
      for (int ax = 0; ax < n; ++ax) {
        delta = std::max(delta, std::abs(acc[static_cast<std::size_t>(ax)] -
                                         prev_grad[static_cast<std::size_t>(ax)]));
        mag = std::max(mag, std::abs(acc[static_cast<std::size_t>(ax)]));
      }
      grad = acc;
      if (delta <= q.target_rel_tol * std::max(mag, 1e-12) || level >= q.max_refinements)
        break;
    } else {
      grad = acc;
      if (q.max_refinements == 0) break;
    }
    prev_grad = acc;
  }
  return Point(grad);
}

}  // namespace fraclap
