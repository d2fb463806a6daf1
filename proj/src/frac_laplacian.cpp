#include <algorithm>
#include <cmath>
#include <vector>

#include "fraclap/engines.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap {
namespace {

double surface_measure(int n) { return n == 2 ? 2.0 * M_PI : 4.0 * M_PI; }

struct SecondDiffAccum {
  // batched evaluation of u(x -+ rho*theta) over one block of radial nodes
  const ScalarField& u;
  const Point& x;
  const AngularRule& ang;
  long evals = 0;

  std::vector<double> xm, ym, zm, xp, yp, zp, um, up;

  SecondDiffAccum(const ScalarField& u_, const Point& x_, const AngularRule& ang_)
      : u(u_), x(x_), ang(ang_) {}

  // weighted angular second-difference sums for the given radii:
  // out[i] = sum_j w_j (2u(x) - u(x - r_i th_j) - u(x + r_i th_j))
  void run(const std::vector<double>& radii, double u2x, std::vector<double>& out) {
    const std::size_t na = ang.size(), nr = radii.size(), m = na * nr;
    const int n = u.dim();
    xm.resize(m); ym.resize(m); xp.resize(m); yp.resize(m);
    if (n >= 3) { zm.resize(m); zp.resize(m); }
    um.resize(m); up.resize(m);
    for (std::size_t i = 0; i < nr; ++i) {
      const double rho = radii[i];
      for (std::size_t j = 0; j < na; ++j) {
        const std::size_t q = i * na + j;
        const double dx = rho * ang.x[j], dy = rho * ang.y[j];
        xm[q] = x[0] - dx; ym[q] = x[1] - dy;
        xp[q] = x[0] + dx; yp[q] = x[1] + dy;
        if (n >= 3) {
          const double dz = rho * ang.z[j];
          zm[q] = x[2] - dz;
          zp[q] = x[2] + dz;
        }
      }
    }
    u.eval_batch(xm.data(), ym.data(), n >= 3 ? zm.data() : nullptr, um.data(), m);
    u.eval_batch(xp.data(), yp.data(), n >= 3 ? zp.data() : nullptr, up.data(), m);
    evals += 2 * static_cast<long>(m);
    const auto& K = simd::kernels();
    out.resize(nr);
    for (std::size_t i = 0; i < nr; ++i)
      out[i] = K.second_diff_sum(ang.w.data(), um.data() + i * na, up.data() + i * na, u2x, na);
  }

  // tail-measure-weighted average of (u(x-y)+u(x+y))/2 over the last block
  double far_mean(const std::vector<double>& radii, const std::vector<double>& wrad,
                  double p) const {
    const auto& K = simd::kernels();
    const std::size_t na = ang.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      double ws = wrad[i] * std::pow(radii[i], p);
      double s = K.dot(ang.w.data(), um.data() + i * na, na) +
                 K.dot(ang.w.data(), up.data() + i * na, na);
      num += ws * 0.5 * s;
      den += ws * K.sum(ang.w.data(), na);
    }
    return den != 0.0 ? num / den : 0.0;
  }
};

struct PassResult {
  double integral = 0.0;   // int (2u(x)-u(x-y)-u(x+y)) |y|^{-n-2s} dy  (no C/2 factor)
  double tail_bound = 0.0;
  double noise_bound = 0.0;
  long evals = 0;
};

PassResult single_pass(const ScalarField& u, const Point& x, const Constants& k,
                       const QuadBudget& q, int level) {
  const int n = k.n;
  const double s = k.s.value();
  const double sigma = surface_measure(n);
  const double eps = q.inner_cutoff;
  const double u2x = 2.0 * u.eval_coords(x.coords().data());

  const int nr = q.radial_nodes << level;
  const int na = q.angular_nodes << level;
  const AngularRule& ang = angular_rule_cached(n, na);
  SecondDiffAccum acc(u, x, ang);

  // Compact support lets the shell stop where both u(x-y) and u(x+y) vanish;
  // past that the integrand is exactly 2u(x)|y|^{-n-2s}.
  double rho_cut = q.truncation_radius;
  bool exact_tail = false;
  if (u.support()) {
    double dcen = dist(x, u.support()->center());
    double cut = dcen + u.support()->radius() + 1e-12;
    if (cut <= q.truncation_radius) {
      rho_cut = cut;
      exact_tail = true;
    }
  } else if (!u.decay()) {
    throw_error(error::kind::tail_unbounded,
                "frac_laplacian: global field without a decay envelope");
  }

  PassResult out;
  std::vector<double> sums;

  // middle shell [eps, rho_cut], panels graded toward eps
  std::vector<double> breaks = graded_breakpoints(eps, rho_cut, eps);
  std::vector<double> radii, wrad;
  std::vector<double> last_radii, last_wrad;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    gauss_on_interval(nr, breaks[p], breaks[p + 1], radii, wrad);
    acc.run(radii, u2x, sums);
    for (std::size_t i = 0; i < radii.size(); ++i)
      out.integral += wrad[i] * std::pow(radii[i], -1.0 - 2.0 * s) * sums[i];
    if (p + 2 == breaks.size() && !exact_tail) {
      last_radii = radii;
      last_wrad = wrad;
      // keep acc buffers for far_mean below
    }
  }

  // tail beyond rho_cut: exact for compact fields, far-mean model otherwise
  const double T = sigma * std::pow(rho_cut, -2.0 * s) / (2.0 * s);
  if (exact_tail) {
    out.integral += u2x * T;
  } else {
    double ubar = acc.far_mean(last_radii, last_wrad, -1.0 - 2.0 * s);
    out.integral += (u2x - 2.0 * ubar) * T;
    double amp = u.decay() ? u.decay()->amplitude : std::abs(u2x);
    out.tail_bound = 2.0 * (amp + std::abs(ubar)) * T;
  }

  // inner ball [0, eps]: substitution rho = eps * t^beta with beta = 1/(1-s)
  // keeps the transformed integrand bounded (the second difference is
  // O(rho^2) for locally C^2 fields); below the floor the quadratic local
  // model is integrated in closed form.
  const double beta = 1.0 / (1.0 - s);
  const double floor_rho = std::max(1e-6, eps * 1e-4);
  const double t0 = std::pow(floor_rho / eps, 1.0 / beta);
  std::vector<double> tn, tw;
  gauss_on_interval(std::max(nr, 12), t0, 1.0, tn, tw);
  std::vector<double> rho_in(tn.size());
  for (std::size_t i = 0; i < tn.size(); ++i) rho_in[i] = eps * std::pow(tn[i], beta);
  acc.run(rho_in, u2x, sums);
  double qhat = 0.0;
  for (std::size_t i = 0; i < tn.size(); ++i) {
    double jac = eps * beta * std::pow(tn[i], beta - 1.0);
    out.integral += tw[i] * jac * std::pow(rho_in[i], -1.0 - 2.0 * s) * sums[i];
  }
  // local curvature from the innermost evaluated radius
  qhat = sums.front() / (sigma * rho_in.front() * rho_in.front());
  double completion = sigma * qhat * std::pow(floor_rho, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  out.integral += completion;
  out.noise_bound = std::abs(completion) * 1e-2 +
                    4e-16 * std::max(std::abs(u2x), 1.0) * sigma *
                        std::pow(floor_rho, -2.0 * s) / (2.0 * s);
  out.evals = acc.evals;
  return out;
}

}  // namespace

EngineResult frac_laplacian(const ScalarField& u, const Point& x, const Constants& k,
                            const QuadBudget& q) {
  q.validate();
  if (u.dim() != k.n || x.dim() != k.n)
    throw_error(error::kind::argument, "frac_laplacian: dimension mismatch");
  const double s = k.s.value();
  if (!u.smoothness())
    throw_error(error::kind::argument,
                "frac_laplacian: field carries no smoothness hint (need at least "
                "holder(2s) near x)");
  const SmoothnessHint& h = *u.smoothness();
  bool ok = (h.kind == SmoothnessHint::label::c1) ||
            (h.kind == SmoothnessHint::label::holder && h.alpha > 2.0 * s);
  if (!ok)
    throw_error(error::kind::argument, "frac_laplacian: smoothness hint below holder(2s)");

  EngineResult res;
  double prev = 0.0;
  PassResult pr;
  for (int level = 0;; ++level) {
    pr = single_pass(u, x, k, q, level);
    res.nodes_used += pr.evals;
    res.refinements = level;
    double v = 0.5 * k.flap_C * pr.integral;
    if (level > 0) {
      double delta = std::abs(v - prev);
      res.value = v;
      res.est_error = delta + 0.5 * k.flap_C * (pr.tail_bound + pr.noise_bound);
      if (delta <= q.target_rel_tol * std::max(std::abs(v), 1e-14) ||
          level >= q.max_refinements)
        break;
    } else {
      res.value = v;
      res.est_error = 0.5 * k.flap_C * (pr.tail_bound + pr.noise_bound);
      if (q.max_refinements == 0) break;
    }
    prev = v;
  }
  return res;
}

}  // namespace fraclap
