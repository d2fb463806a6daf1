#include "fraclap/probes.hpp"

#include <cmath>

namespace fraclap {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
  }
  return r;
}

namespace {

Point shell_point(const Point& c, double radius, int dim, std::uint64_t idx) {
  if (dim == 2) {
    double th = 2.0 * M_PI * halton(idx, 3);
    Point p = c;
    p[0] += radius * std::cos(th);
    p[1] += radius * std::sin(th);
    return p;
  }
  double mu = 2.0 * halton(idx, 3) - 1.0;
  double ph = 2.0 * M_PI * halton(idx, 5);
  double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  Point p = c;
  p[0] += radius * smu * std::cos(ph);
  p[1] += radius * smu * std::sin(ph);
  p[2] += radius * mu;
  return p;
}

}  // namespace

std::vector<Point> halton_ball_points(const Ball& B, std::size_t count, std::uint64_t seed) {
  std::vector<Point> pts;
  pts.reserve(count);
  const int n = B.dim();
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t idx = seed + i + 1;
    double u = halton(idx, 2);
    double radius = B.radius() * (n == 2 ? std::sqrt(u) : std::cbrt(u));
    pts.push_back(shell_point(B.center(), radius, n, idx));
  }
  return pts;
}

std::vector<Point> halton_shell_points(const Point& center, double r_in, double r_out, int dim,
                                       std::size_t count, std::uint64_t seed) {
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t idx = seed + i + 1;
    double u = halton(idx, 2);
    double vol_lo = std::pow(r_in, dim), vol_hi = std::pow(r_out, dim);
    double radius = std::pow(vol_lo + u * (vol_hi - vol_lo), 1.0 / dim);
    pts.push_back(shell_point(center, radius, dim, idx));
  }
  return pts;
}

}  // namespace fraclap
