#include "fraclap/poisson_ext.hpp"

#include <algorithm>
#include <cmath>

#include "fraclap/quadrature.hpp"
#include "fraclap/simd/kernels.hpp"

namespace fraclap {
namespace {

double surface_measure(int n) { return n == 2 ? 2.0 * M_PI : 4.0 * M_PI; }

// stable (rho^2 - t^2) for rho > r >= t, given drho = rho - r and wb = r - t
inline double rho2_minus_t2(double rho, double t, double drho, double wb) {
  return (drho + wb) * (rho + t);
}

}  // namespace

PoissonExtension::PoissonExtension(ScalarField g, Ball B, const Constants& k,
                                   const QuadBudget& q)
    : g_field_(std::move(g)), ball_(std::move(B)), k_(k), budget_(q), n_(k.n),
      s_(k.s.value()) {
  q.validate();
  if (g_field_.dim() != n_ || ball_.dim() != n_)
    throw_error(error::kind::argument, "PoissonExtension: dimension mismatch");

  const double r = ball_.radius();
  rfar_ = std::max(q.truncation_radius, 4.0 * r);
  if (g_field_.support()) {
    double cut = dist(ball_.center(), g_field_.support()->center()) +
                 g_field_.support()->radius();
    if (cut <= rfar_) {
      rfar_ = std::max(cut, 2.5 * r);
      tail_zero_ = true;
    }
  } else if (!g_field_.decay()) {
    throw_error(error::kind::tail_unbounded,
                "exterior data without compact support or decay envelope");
  }

  radial_ = g_field_.radial_about_origin() && ball_.center().norm() == 0.0;
  if (radial_) {
    // 1-D profile of g on [r, rfar]; adaptive panels absorb radial kinks
    RadialTable::BatchFn prof = [this](const std::vector<double>& xs,
                                       std::vector<double>& out) {
      out.resize(xs.size());
      std::vector<double> ys(xs.size(), 0.0), zs(n_ >= 3 ? xs.size() : 0, 0.0);
      g_field_.eval_batch(xs.data(), ys.data(), n_ >= 3 ? zs.data() : nullptr, out.data(),
                          xs.size());
    };
    std::vector<double> marks{r, 2.0 * r};
    if (g_field_.support())
      marks.push_back(dist(ball_.center(), g_field_.support()->center()) +
                      g_field_.support()->radius());
    double scale = 0.0;
    {
      std::vector<double> sx, sv;
      for (int i = 0; i < 16; ++i) sx.push_back(r + (rfar_ - r) * (i + 0.5) / 16.0);
      prof(sx, sv);
      for (double v : sv) scale = std::max(scale, std::abs(v));
    }
    double tab_tol = std::max(1e-9, 3.0 * q.target_rel_tol);
    gtab_ = std::make_unique<RadialTable>(prof, r * (1.0 + 1e-12), rfar_, marks, tab_tol, 14,
                                          scale);
    // far-field mean and grid stats from the table
    double gm = 0.0;
    bool nz = false;
    for (int i = 0; i < 256; ++i) {
      double rho = r + (rfar_ - r) * (i + 0.5) / 256.0;
      double v = gtab_->eval(rho);
      gm = std::max(gm, std::abs(v));
      nz = nz || v != 0.0;
    }
    gmax_ = gm;
    all_zero_ = !nz;
    if (tail_zero_ || all_zero_) {
      gbar_ = 0.0;
    } else {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < 64; ++i) {
        double rho = 0.5 * rfar_ + 0.5 * rfar_ * (i + 0.5) / 64.0;
        double wt = std::pow(rho, n_ - 1.0) * std::pow(rho * rho - r * r, -s_);
        num += wt * gtab_->eval(rho);
        den += wt;
      }
      gbar_ = num / den;
    }
    return;
  }

  build_grid(q);
}

void PoissonExtension::build_grid(const QuadBudget& q) {
  const double r = ball_.radius();
  const double qexp = 1.0 / (1.0 - s_);

  // radial stations: substituted boundary layer [r, 2r] + geometric far panels
  std::vector<double> rho_nodes, rho_w;  // rho_w includes everything except the angular weight
  std::vector<double> tx, tw;
  std::vector<double> bp = graded_breakpoints(0.0, 1.0, 1.0 / 64.0);
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    gauss_on_interval(q.radial_nodes, bp[p], bp[p + 1], tx, tw);
    for (std::size_t i = 0; i < tx.size(); ++i) {
      double tau = tx[i];
      double drho = r * std::pow(tau, qexp);
      double rho = r + drho;
      // jacobian * (rho-r)^{-s} collapse to qexp * r^{1-s} * tau^0
      double wr = tw[i] * qexp * std::pow(r, 1.0 - s_) *
                  std::pow(rho + r, -s_) * std::pow(rho, n_ - 1.0);
      rho_nodes.push_back(rho);
      rho_w.push_back(wr);
    }
  }
  {
    std::vector<double> breaks = graded_breakpoints(2.0 * r, rfar_, r);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      gauss_on_interval(q.radial_nodes, breaks[p], breaks[p + 1], tx, tw);
      for (std::size_t i = 0; i < tx.size(); ++i) {
        double rho = tx[i];
        double wr = tw[i] * std::pow(rho * rho - r * r, -s_) * std::pow(rho, n_ - 1.0);
        rho_nodes.push_back(rho);
        rho_w.push_back(wr);
      }
    }
  }

  const AngularRule& ang = angular_rule_cached(n_, q.angular_nodes);
  ring_na_ = ang.size();
  const std::size_t total = rho_nodes.size() * ring_na_;
  xs_.resize(total);
  ys_.resize(total);
  if (n_ >= 3) zs_.resize(total);
  w_.resize(total);
  rings_.resize(rho_nodes.size());
  const Point& c = ball_.center();
  for (std::size_t i = 0; i < rho_nodes.size(); ++i) {
    rings_[i] = {rho_nodes[i], rho_w[i], i * ring_na_};
    for (std::size_t j = 0; j < ring_na_; ++j) {
      std::size_t qn = i * ring_na_ + j;
      xs_[qn] = c[0] + rho_nodes[i] * ang.x[j];
      ys_[qn] = c[1] + rho_nodes[i] * ang.y[j];
      if (n_ >= 3) zs_[qn] = c[2] + rho_nodes[i] * ang.z[j];
      w_[qn] = rho_w[i] * ang.w[j];
    }
  }

  g_.resize(total);
  g_field_.eval_batch(xs_.data(), ys_.data(), n_ >= 3 ? zs_.data() : nullptr, g_.data(), total);
  wg_.resize(total);
  simd::kernels().mul(w_.data(), g_.data(), wg_.data(), total);

  for (double v : g_) {
    gmax_ = std::max(gmax_, std::abs(v));
    if (v != 0.0) all_zero_ = false;
  }

  if (tail_zero_) {
    gbar_ = 0.0;
  } else {
    // tail-measure-weighted mean of g over the outermost radial band
    double num = 0.0, den = 0.0;
    double rho_top = rho_nodes.back();
    for (std::size_t i = 0; i < rings_.size(); ++i) {
      if (rings_[i].rho < 0.5 * rho_top) continue;
      for (std::size_t j = 0; j < ring_na_; ++j) {
        num += w_[rings_[i].offset + j] * g_[rings_[i].offset + j];
        den += w_[rings_[i].offset + j];
      }
    }
    gbar_ = den != 0.0 ? num / den : 0.0;
  }

  interps_.resize(rings_.size());
}

double PoissonExtension::tail_J(double a) const {
  const double r = ball_.radius();
  double total = 0.0;
  double lo = rfar_;
  std::vector<double> x, w;
  for (int m = 0; m < 40; ++m) {
    double hi = lo * 2.0;
    gauss_on_interval(8, lo, hi, x, w);
    for (std::size_t i = 0; i < x.size(); ++i)
      total += w[i] * x[i] * std::pow(x[i] * x[i] - r * r, -s_) / (x[i] * x[i] - a * a);
    lo = hi;
  }
  total += std::pow(lo, -2.0 * s_) / (2.0 * s_);  // asymptotic remainder
  return total;
}

double PoissonExtension::tail_J_da(double a) const {
  const double r = ball_.radius();
  double total = 0.0;
  double lo = rfar_;
  std::vector<double> x, w;
  for (int m = 0; m < 40; ++m) {
    double hi = lo * 2.0;
    gauss_on_interval(8, lo, hi, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] * x[i] - a * a;
      total += w[i] * x[i] * std::pow(x[i] * x[i] - r * r, -s_) * 2.0 * a / (d * d);
    }
    lo = hi;
  }
  return total;
}

double PoissonExtension::tail_J_da2(double a) const {
  const double r = ball_.radius();
  double total = 0.0;
  double lo = rfar_;
  std::vector<double> x, w;
  for (int m = 0; m < 40; ++m) {
    double hi = lo * 2.0;
    gauss_on_interval(8, lo, hi, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] * x[i] - a * a;
      total += w[i] * x[i] * std::pow(x[i] * x[i] - r * r, -s_) *
               (2.0 / (d * d) + 8.0 * a * a / (d * d * d));
    }
    lo = hi;
  }
  return total;
}

const RingInterp& PoissonExtension::ring_interp(std::size_t i) const {
  std::lock_guard<std::mutex> lock(interp_mutex_);
  if (!interps_[i]) interps_[i] = std::make_unique<RingInterp>(g_.data() + rings_[i].offset,
                                                               ring_na_);
  return *interps_[i];
}

double PoissonExtension::eval_radial(double t, double* defect) const {
  const double r = ball_.radius();
  const double wb = r - t;
  const double qexp = 1.0 / (1.0 - s_);
  const double sigma = surface_measure(n_);

  // kernel-only closed angular forms: 1/(rho^2-t^2) (n=2), 1/(rho(rho^2-t^2)) (n=3)
  auto kappa = [this, t, wb](double rho, double drho) {
    double d = rho2_minus_t2(rho, t, drho, wb);
    return n_ == 2 ? 1.0 / d : 1.0 / (rho * d);
  };

  double acc_g = 0.0, acc_1 = 0.0;
  std::vector<double> tx, tw;
  // boundary layer, graded toward tau = 0 at the scale set by (r-t)
  double first = std::min(1.0 / 64.0, 0.25 * std::pow(std::max(wb, 1e-14) / r, 1.0 - s_));
  std::vector<double> bp = graded_breakpoints(0.0, 1.0, first);
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    gauss_on_interval(budget_.radial_nodes, bp[p], bp[p + 1], tx, tw);
    for (std::size_t i = 0; i < tx.size(); ++i) {
      double tau = tx[i];
      double drho = r * std::pow(tau, qexp);
      double rho = r + drho;
      double wr = tw[i] * qexp * std::pow(r, 1.0 - s_) * std::pow(rho + r, -s_) *
                  std::pow(rho, n_ - 1.0) * kappa(rho, drho);
      acc_g += wr * gtab_->eval(rho);
      acc_1 += wr;
    }
  }
  {  // far region
    std::vector<double> breaks = graded_breakpoints(2.0 * r, rfar_, r);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      gauss_on_interval(budget_.radial_nodes, breaks[p], breaks[p + 1], tx, tw);
      for (std::size_t i = 0; i < tx.size(); ++i) {
        double rho = tx[i];
        double wr = tw[i] * std::pow(rho * rho - r * r, -s_) * std::pow(rho, n_ - 1.0) *
                    kappa(rho, rho - r);
        acc_g += wr * gtab_->eval(rho);
        acc_1 += wr;
      }
    }
  }
  double tj = tail_J(t);  // kernel tail: same 1-D form for n = 2 and 3
  double pref = k_.poisson_c * std::pow((r - t) * (r + t), s_) * sigma;
  if (defect) *defect = std::abs(pref * (acc_1 + tj) - 1.0);
  return pref * (acc_g + (tail_zero_ ? 0.0 : gbar_ * tj));
}

double PoissonExtension::eval_fast(double a2, const Point& x, double* defect) const {
  const double r = ball_.radius();
  const auto& K = simd::kernels();
  const std::size_t m = g_.size();
  static thread_local std::vector<double> d2;
  d2.resize(m);
  double s0, s1;
  if (n_ == 2) {
    K.dist_sq_2d(x[0], x[1], xs_.data(), ys_.data(), d2.data(), m);
    s0 = K.sum_w_over_d2(wg_.data(), d2.data(), m);
    s1 = defect ? K.sum_w_over_d2(w_.data(), d2.data(), m) : 0.0;
  } else {
    K.dist_sq_3d(x[0], x[1], x[2], xs_.data(), ys_.data(), zs_.data(), d2.data(), m);
    s0 = K.sum_w_over_d3(wg_.data(), d2.data(), m);
    s1 = defect ? K.sum_w_over_d3(w_.data(), d2.data(), m) : 0.0;
  }
  double a = std::sqrt(a2);
  // node weights already include the full angular measure; the closed-form
  // tail carries sigma_n explicitly
  double tj = (defect || !tail_zero_) ? tail_J(a) * surface_measure(n_) : 0.0;
  double pref = k_.poisson_c * std::pow(r * r - a2, s_);
  if (defect) *defect = std::abs(pref * (s1 + tj) - 1.0);
  return pref * (s0 + (tail_zero_ ? 0.0 : gbar_ * tj));
}

double PoissonExtension::eval_near(double a, const Point& x, double* defect) const {
  const double r = ball_.radius();
  const Point xt = x - ball_.center();
  const double phix = std::atan2(xt[1], xt[0]);
  double acc = 0.0, acc1 = 0.0;
  std::vector<double> px, pw;
  for (std::size_t i = 0; i < rings_.size(); ++i) {
    const Ring& ring = rings_[i];
    const RingInterp& gi = ring_interp(i);
    double rho = ring.rho;
    double delta = std::clamp(std::abs(rho - a) / std::sqrt(rho * a), 1e-7, 0.25 * M_PI);
    // symmetric panels [-pi,pi] graded toward the kernel peak at psi = 0
    std::vector<double> edges{0.0, delta};
    while (edges.back() < M_PI) edges.push_back(std::min(M_PI, edges.back() * 2.0));
    double ring_sum = 0.0, ring_norm = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      for (int side = 0; side < 2; ++side) {
        double lo = side ? -edges[p + 1] : edges[p];
        double hi = side ? -edges[p] : edges[p + 1];
        gauss_on_interval(8, lo, hi, px, pw);
        for (std::size_t t = 0; t < px.size(); ++t) {
          double psi = px[t];
          double sh = std::sin(0.5 * psi);
          double d2 = (rho - a) * (rho - a) + 4.0 * rho * a * sh * sh;
          double kker = n_ == 2 ? 1.0 / d2 : 1.0;  // near path is n=2 only
          ring_sum += pw[t] * gi.eval(phix + psi) * kker;
          ring_norm += pw[t] * kker;
        }
      }
    }
    acc += ring.wr * ring_sum;
    acc1 += ring.wr * ring_norm;
  }
  double tj = tail_J(a);
  double pref = k_.poisson_c * std::pow((r - a) * (r + a), s_);
  if (defect) *defect = std::abs(pref * (acc1 + tj * surface_measure(n_)) - 1.0);
  return pref * (acc + (tail_zero_ ? 0.0 : gbar_ * tj * surface_measure(n_)));
}

double PoissonExtension::eval_with_defect(const Point& x, double* norm_defect) const {
  const double r = ball_.radius();
  double a2 = (x - ball_.center()).norm_sq();
  if (!(a2 < r * r))
    throw_error(error::kind::domain, "PoissonExtension: x not strictly inside the ball");
  if (radial_) return eval_radial(std::sqrt(a2), norm_defect);
  if (all_zero_ && tail_zero_) {
    if (norm_defect) *norm_defect = 0.0;
    return 0.0;
  }
  double a = std::sqrt(a2);
  if (a <= 0.7 * r || n_ == 3) return eval_fast(a2, x, norm_defect);
  return eval_near(a, x, norm_defect);
}

Point PoissonExtension::gradient(const Point& x) const {
  const double r = ball_.radius();
  const Point xt = x - ball_.center();
  const double a2 = xt.norm_sq();
  const double a = std::sqrt(a2);
  if (!(a <= 0.75 * r))
    throw_error(error::kind::conditioning,
                "PoissonExtension::gradient: restricted to |x-x0| <= 0.75 r");

  const double sigma = surface_measure(n_);
  const double q2 = r * r - a2;

  if (radial_) {
    // dE/dt along the radial direction; at the center the gradient vanishes
    if (a < 1e-14) return Point::zero(n_);
    const double wb = r - a;
    const double qexp = 1.0 / (1.0 - s_);
    double accI = 0.0, accIp = 0.0;
    std::vector<double> tx, tw;
    auto add_node = [&](double rho, double drho, double wr) {
      double d = rho2_minus_t2(rho, a, drho, wb);
      double base = n_ == 2 ? 1.0 / d : 1.0 / (rho * d);
      double dbase = base * 2.0 * a / d;
      double gv = gtab_->eval(rho);
      accI += wr * gv * base;
      accIp += wr * gv * dbase;
    };
    double first = std::min(1.0 / 64.0, 0.25 * std::pow(wb / r, 1.0 - s_));
    std::vector<double> bp = graded_breakpoints(0.0, 1.0, first);
    for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
      gauss_on_interval(budget_.radial_nodes, bp[p], bp[p + 1], tx, tw);
      for (std::size_t i = 0; i < tx.size(); ++i) {
        double tau = tx[i];
        double drho = r * std::pow(tau, qexp);
        double rho = r + drho;
        double wr = tw[i] * qexp * std::pow(r, 1.0 - s_) * std::pow(rho + r, -s_) *
                    std::pow(rho, n_ - 1.0);
        add_node(rho, drho, wr);
      }
    }
    std::vector<double> breaks = graded_breakpoints(2.0 * r, rfar_, r);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      gauss_on_interval(budget_.radial_nodes, breaks[p], breaks[p + 1], tx, tw);
      for (std::size_t i = 0; i < tx.size(); ++i) {
        double rho = tx[i];
        double wr = tw[i] * std::pow(rho * rho - r * r, -s_) * std::pow(rho, n_ - 1.0);
        add_node(rho, rho - r, wr);
      }
    }
    if (!tail_zero_) {
      accI += gbar_ * tail_J(a);
      accIp += gbar_ * tail_J_da(a);
    }
    double pref = k_.poisson_c * sigma;
    double dEdt = pref * (-2.0 * s_ * a * std::pow(q2, s_ - 1.0) * accI +
                          std::pow(q2, s_) * accIp);
    Point grad = Point::zero(n_);
    for (int i = 0; i < n_; ++i) grad[i] = dEdt * xt[i] / a;
    return grad;
  }

  double s0, g1, g2, g3 = 0.0;
  const std::size_t m = g_.size();
  if (n_ == 2) {
    simd::kernels().grad_sums_2d(x[0], x[1], xs_.data(), ys_.data(), wg_.data(), m, &s0, &g1,
                                 &g2);
  } else {
    simd::kernels().grad_sums_3d(x[0], x[1], x[2], xs_.data(), ys_.data(), zs_.data(),
                                 wg_.data(), m, &s0, &g1, &g2, &g3);
  }
  double tj = 0.0, tjp = 0.0;
  if (!tail_zero_) {
    tj = gbar_ * tail_J(a) * sigma;
    tjp = gbar_ * tail_J_da(a) * sigma;
  }
  double c = k_.poisson_c;
  double qs = std::pow(q2, s_);
  double qs1 = std::pow(q2, s_ - 1.0);
  Point grad = Point::zero(n_);
  const double gg[3] = {g1, g2, g3};
  for (int i = 0; i < n_; ++i) {
    double dj = c * (-2.0 * s_ * xt[i] * qs1 * (s0 + tj) +
                     qs * (-static_cast<double>(n_) * gg[i] +
                           (a > 1e-14 ? tjp * xt[i] / a : 0.0)));
    grad[i] = dj;
  }
  return grad;
}

double PoissonExtension::second_derivative(const Point& x, int i, int j) const {
  const double r = ball_.radius();
  const Point xt = x - ball_.center();
  const double a2 = xt.norm_sq();
  if (!(std::sqrt(a2) <= 0.75 * r))
    throw_error(error::kind::conditioning,
                "PoissonExtension::second_derivative: restricted to |x-x0| <= 0.75 r");
  if (radial_)
    throw_error(error::kind::unsupported,
                "PoissonExtension::second_derivative: general route only");

  // P = c Q^s B with Q = r^2-|x-x0|^2, B = |x-y|^{-n}:
  //   D_ij P = c [ s(s-1) Q^{s-2} Qi Qj B + s Q^{s-1} (Qij B + Qi Bj + Qj Bi)
  //               + Q^s Bij ]
  // where Qi = -2 xt_i, Qij = -2 dij, Bi = -n di B/d^2 and
  // Bij = -n dij B/d^2 + n(n+2) di dj B/d^4.  (The far-field tail model
  // contributes O(R^{-2s-2}) here and is dropped.)
  const double s = s_;
  const double Q = r * r - a2;
  const double Qi = -2.0 * xt[i], Qj = -2.0 * xt[j];
  const double Qij = (i == j) ? -2.0 : 0.0;
  const double dij = (i == j) ? 1.0 : 0.0;
  double S0 = 0.0, S2 = 0.0, Gi = 0.0, Gj = 0.0, Hij = 0.0;
  const std::size_t m = g_.size();
  for (std::size_t t = 0; t < m; ++t) {
    double dc[3] = {x[0] - xs_[t], x[1] - ys_[t], 0.0};
    double dd = dc[0] * dc[0] + dc[1] * dc[1];
    if (n_ >= 3) {
      dc[2] = x[2] - zs_[t];
      dd += dc[2] * dc[2];
    }
    double B = std::pow(dd, -0.5 * n_);
    double B2 = B / dd;
    S0 += wg_[t] * B;
    S2 += wg_[t] * B2;
    Gi += wg_[t] * dc[i] * B2;
    Gj += wg_[t] * dc[j] * B2;
    Hij += wg_[t] * dc[i] * dc[j] * B2 / dd;
  }
  const double nn = static_cast<double>(n_);
  double val = s * (s - 1.0) * std::pow(Q, s - 2.0) * Qi * Qj * S0 +
               s * std::pow(Q, s - 1.0) * (Qij * S0 - nn * (Qi * Gj + Qj * Gi)) +
               std::pow(Q, s) * (-nn * dij * S2 + nn * (nn + 2.0) * Hij);
  if (!tail_zero_ && gbar_ != 0.0) {
    // exact second derivatives of the far-field model  c gbar Q^s sigma J(a)
    const double sig = surface_measure(n_);
    const double a = std::sqrt(a2);
    const double J = tail_J(a);
    double tail;
    if (a < 1e-8) {
      tail = s * std::pow(Q, s - 1.0) * Qij * J + std::pow(Q, s) * dij * tail_J_da2(0.0);
    } else {
      const double J1 = tail_J_da(a), J2 = tail_J_da2(a);
      const double ai = xt[i], aj = xt[j];
      double dJ_ij = J2 * ai * aj / a2 + J1 * (dij - ai * aj / a2) / a;
      tail = s * (s - 1.0) * std::pow(Q, s - 2.0) * Qi * Qj * J +
             s * std::pow(Q, s - 1.0) * (Qij * J + (Qi * aj + Qj * ai) * J1 / a) +
             std::pow(Q, s) * dJ_ij;
    }
    val += gbar_ * sig * tail;
  }
  return k_.poisson_c * val;
}

EngineResult exterior_poisson_integral(const ScalarField& g, const Point& x, const Ball& B,
                                       const Constants& k, const QuadBudget& q) {
  q.validate();
  if (!B.contains(x))
    throw_error(error::kind::domain, "exterior_poisson_integral: x not strictly inside B");
  EngineResult res;
  double prev = 0.0;
  for (int level = 0;; ++level) {
    PoissonExtension ext(g, B, k, q.refined(level));
    double defect = 0.0;
    double v = ext.eval_with_defect(x, &defect);
    res.nodes_used += ext.node_count();
    res.refinements = level;
    res.value = v;
    if (level > 0) {
      double delta = std::abs(v - prev);
      res.est_error = delta + defect * ext.sup_grid_g();
      if (delta <= q.target_rel_tol * std::max(std::abs(v), 1e-14) ||
          level >= q.max_refinements)
        break;
    } else {
      res.est_error = defect * ext.sup_grid_g();
      if (q.max_refinements == 0) break;
    }
    prev = v;
  }
  return res;
}

}  // namespace fraclap
