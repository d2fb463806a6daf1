#include "fraclap/interp.hpp"

#include <algorithm>
#include <cmath>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

constexpr int kChebN = 12;  // Lobatto nodes per panel

const std::vector<double>& cheb_nodes() {
  static const std::vector<double> nodes = [] {
    std::vector<double> v(kChebN + 1);
    for (int k = 0; k <= kChebN; ++k) v[static_cast<std::size_t>(k)] = std::cos(M_PI * k / kChebN);
    return v;
  }();
  return nodes;
}

const std::vector<double>& cheb_bary_weights() {
  static const std::vector<double> w = [] {
    std::vector<double> v(kChebN + 1);
    for (int k = 0; k <= kChebN; ++k) {
      double wk = (k % 2 == 0) ? 1.0 : -1.0;
      if (k == 0 || k == kChebN) wk *= 0.5;
      v[static_cast<std::size_t>(k)] = wk;
    }
    return v;
  }();
  return w;
}

}  // namespace

RadialTable::RadialTable(const std::function<double(double)>& fn, double a, double b,
                         std::vector<double> breakpoints, double rel_tol, int max_depth,
                         double scale_hint)
    : RadialTable(
          [&fn](const std::vector<double>& xs, std::vector<double>& out) {
            out.resize(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i]);
          },
          a, b, std::move(breakpoints), rel_tol, max_depth, scale_hint) {}

RadialTable::RadialTable(const BatchFn& fn, double a, double b,
                         std::vector<double> breakpoints, double rel_tol, int max_depth,
                         double scale_hint)
    : a_(a), b_(b) {
  if (!(b > a)) throw_error(error::kind::argument, "RadialTable: empty interval");
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (hi <= a || lo >= b) continue;
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    if (hi > lo) build(fn, lo, hi, rel_tol, 0, max_depth, scale_hint);
  }
  std::sort(panels_.begin(), panels_.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
}

void RadialTable::build(const BatchFn& fn, double a, double b, double tol, int depth,
                        int max_depth, double scale_hint) {
  Panel p;
  p.a = a;
  p.b = b;
  const auto& nodes = cheb_nodes();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);

  // panel nodes and midpoint check abscissae in one batch
  std::vector<double> xs;
  xs.reserve(kChebN + 1 + 4);
  for (int k = 0; k <= kChebN; ++k)
    xs.push_back(mid + half * nodes[static_cast<std::size_t>(k)]);
  std::size_t ncheck = 0;
  if (depth < max_depth) {
    for (int k = 0; k < kChebN; k += 3) {
      xs.push_back(mid + half * 0.5 *
                             (nodes[static_cast<std::size_t>(k)] +
                              nodes[static_cast<std::size_t>(k + 1)]));
      ++ncheck;
    }
  }
  std::vector<double> vals;
  fn(xs, vals);
  p.vals.assign(vals.begin(), vals.begin() + kChebN + 1);
  double scale = scale_hint;
  for (int k = 0; k <= kChebN; ++k)
    scale = std::max(scale, std::abs(p.vals[static_cast<std::size_t>(k)]));

  if (ncheck > 0) {
    double err = 0.0;
    for (std::size_t c = 0; c < ncheck; ++c)
      err = std::max(err, std::abs(eval_panel(p, xs[kChebN + 1 + c]) - vals[kChebN + 1 + c]));
    if (err > tol * std::max(scale, 1e-14)) {
      build(fn, a, mid, tol, depth + 1, max_depth, scale_hint);
      build(fn, mid, b, tol, depth + 1, max_depth, scale_hint);
      return;
    }
  }
  panels_.push_back(std::move(p));
}

double RadialTable::eval_panel(const Panel& p, double x) {
  const auto& nodes = cheb_nodes();
  const auto& bw = cheb_bary_weights();
  double t = (2.0 * x - (p.a + p.b)) / (p.b - p.a);
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= kChebN; ++k) {
    double d = t - nodes[static_cast<std::size_t>(k)];
    if (d == 0.0) return p.vals[static_cast<std::size_t>(k)];
    double c = bw[static_cast<std::size_t>(k)] / d;
    num += c * p.vals[static_cast<std::size_t>(k)];
    den += c;
  }
  return num / den;
}

double RadialTable::eval(double x) const {
  x = std::clamp(x, a_, b_);
  // binary search for the panel containing x
  std::size_t lo = 0, hi = panels_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (panels_[mid].a <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return eval_panel(panels_[lo], x);
}

RingInterp::RingInterp(const double* vals, std::size_t n) : n_(n) {
  // DFT relative to the midpoint grid phi_j = 2 pi (j+1/2)/n
  std::size_t kmax = n / 2;
  a_.assign(kmax + 1, 0.0);
  b_.assign(kmax + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double phi = 2.0 * M_PI * (j + 0.5) / n;
    a0_ += vals[j];
    for (std::size_t k = 1; k <= kmax; ++k) {
      a_[k] += vals[j] * std::cos(k * phi);
      b_[k] += vals[j] * std::sin(k * phi);
    }
  }
  a0_ /= n;
  for (std::size_t k = 1; k <= kmax; ++k) {
    double norm = (2 * k == n) ? 1.0 / n : 2.0 / n;  // Nyquist mode counted once
    a_[k] *= norm;
    b_[k] *= norm;
  }
}

double RingInterp::eval(double phi) const {
  double v = a0_;
  double c1 = std::cos(phi), s1 = std::sin(phi);
  double ck = 1.0, sk = 0.0;  // cos(k phi), sin(k phi) by recurrence
  for (std::size_t k = 1; k < a_.size(); ++k) {
    double cn = ck * c1 - sk * s1;
    double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    v += a_[k] * ck + b_[k] * sk;
  }
  return v;
}

}  // namespace fraclap
