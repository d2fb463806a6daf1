#include "fraclap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace fraclap {
namespace {

GaussRule compute_gauss(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  // Newton iteration from the Chebyshev-like initial guess; symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

std::mutex g_rule_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw_error(error::kind::argument, "gauss_legendre: n >= 1 required");
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

void gauss_on_interval(int n, double a, double b, std::vector<double>& x,
                       std::vector<double>& w) {
  const GaussRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.resize(r.nodes.size());
  w.resize(r.nodes.size());
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    x[i] = mid + half * r.nodes[i];
    w[i] = half * r.weights[i];
  }
}

std::vector<double> graded_breakpoints(double a, double b, double first_width) {
  if (!(b > a) || !(first_width > 0.0))
    throw_error(error::kind::argument, "graded_breakpoints: bad interval");
  std::vector<double> br{a};
  double h = first_width;
  double t = a;
  while (t + h < b && br.size() < 200) {
    t += h;
    br.push_back(t);
    h *= 2.0;
  }
  br.push_back(b);
  return br;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int nodes_per_panel) {
  double total = 0.0;
  std::vector<double> x, w;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    gauss_on_interval(nodes_per_panel, breaks[p], breaks[p + 1], x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    total += s;
  }
  return total;
}

AngularRule circle_rule(int n) {
  AngularRule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.y.resize(static_cast<std::size_t>(n));
  r.w.assign(static_cast<std::size_t>(n), 2.0 * M_PI / n);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * (j + 0.5) / n;
    r.x[static_cast<std::size_t>(j)] = std::cos(th);
    r.y[static_cast<std::size_t>(j)] = std::sin(th);
  }
  return r;
}

AngularRule sphere_rule(int n) {
  // Gauss in mu = cos(theta), uniform midpoints in phi, n_phi = 2 n_mu.
  int nmu = std::max(2, static_cast<int>(std::ceil(std::sqrt(n / 2.0))));
  int nphi = 2 * nmu;
  const GaussRule& g = gauss_legendre(nmu);
  AngularRule r;
  r.x.reserve(static_cast<std::size_t>(nmu * nphi));
  r.y.reserve(static_cast<std::size_t>(nmu * nphi));
  r.z.reserve(static_cast<std::size_t>(nmu * nphi));
  r.w.reserve(static_cast<std::size_t>(nmu * nphi));
  for (int i = 0; i < nmu; ++i) {
    double mu = g.nodes[static_cast<std::size_t>(i)];
    double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    double wmu = g.weights[static_cast<std::size_t>(i)] * (2.0 * M_PI / nphi);
    for (int j = 0; j < nphi; ++j) {
      double ph = 2.0 * M_PI * (j + 0.5) / nphi;
      r.x.push_back(smu * std::cos(ph));
      r.y.push_back(smu * std::sin(ph));
      r.z.push_back(mu);
      r.w.push_back(wmu);
    }
  }
  return r;
}

const AngularRule& angular_rule_cached(int dim, int n) {
  static std::map<std::pair<int, int>, AngularRule> cache;
  static std::mutex angular_mutex;  // sphere_rule itself takes the Gauss lock
  auto key = std::make_pair(dim, n);
  {
    std::lock_guard<std::mutex> lock(angular_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  AngularRule rule = dim == 2 ? circle_rule(n) : sphere_rule(n);
  std::lock_guard<std::mutex> lock(angular_mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace fraclap
