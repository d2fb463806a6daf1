// Scalar reference kernels.  Reductions run four interleaved accumulators so
// the result matches the AVX2 lane layout bit for bit.

#include <cmath>

#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {
namespace scalar {

namespace {
inline double combine(const double acc[4]) { return (acc[0] + acc[2]) + (acc[1] + acc[3]); }
}  // namespace

double dot(const double* w, const double* v, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[i + l] * v[i + l];
  for (std::size_t l = 0; i + l < n; ++l) acc[l] += w[i + l] * v[i + l];
  return combine(acc);
}

double sum(const double* v, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += v[i + l];
  for (std::size_t l = 0; i + l < n; ++l) acc[l] += v[i + l];
  return combine(acc);
}

void dist_sq_2d(double px, double py, const double* xs, const double* ys, double* out,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double dx = px - xs[i], dy = py - ys[i];
    out[i] = dx * dx + dy * dy;
  }
}

void dist_sq_3d(double px, double py, double pz, const double* xs, const double* ys,
                const double* zs, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double dx = px - xs[i], dy = py - ys[i], dz = pz - zs[i];
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

double sum_w_over_d2(const double* w, const double* d2, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[i + l] / d2[i + l];
  for (std::size_t l = 0; i + l < n; ++l) acc[l] += w[i + l] / d2[i + l];
  return combine(acc);
}

double sum_w_over_d3(const double* w, const double* d2, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[i + l] / (d2[i + l] * std::sqrt(d2[i + l]));
  for (std::size_t l = 0; i + l < n; ++l) acc[l] += w[i + l] / (d2[i + l] * std::sqrt(d2[i + l]));
  return combine(acc);
}

void grad_sums_2d(double px, double py, const double* xs, const double* ys, const double* w,
                  std::size_t n, double* s0, double* g1, double* g2) {
  double a0[4] = {0, 0, 0, 0}, a1[4] = {0, 0, 0, 0}, a2[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  auto step = [&](std::size_t k, int l) {
    double dx = px - xs[k], dy = py - ys[k];
    double d2 = dx * dx + dy * dy;
    double wd2 = w[k] / d2;
    double wd4 = wd2 / d2;
    a0[l] += wd2;
    a1[l] += dx * wd4;
    a2[l] += dy * wd4;
  };
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) step(i + l, l);
  for (std::size_t l = 0; i + l < n; ++l) step(i + l, static_cast<int>(l));
  *s0 = combine(a0);
  *g1 = combine(a1);
  *g2 = combine(a2);
}

void grad_sums_3d(double px, double py, double pz, const double* xs, const double* ys,
                  const double* zs, const double* w, std::size_t n, double* s0, double* g1,
                  double* g2, double* g3) {
  double a0[4] = {0, 0, 0, 0}, a1[4] = {0, 0, 0, 0}, a2[4] = {0, 0, 0, 0}, a3[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  auto step = [&](std::size_t k, int l) {
    double dx = px - xs[k], dy = py - ys[k], dz = pz - zs[k];
    double d2 = (dx * dx + dy * dy) + dz * dz;
    double d1 = std::sqrt(d2);
    double wd3 = w[k] / (d2 * d1);
    double wd5 = wd3 / d2;
    a0[l] += wd3;
    a1[l] += dx * wd5;
    a2[l] += dy * wd5;
    a3[l] += dz * wd5;
  };
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) step(i + l, l);
  for (std::size_t l = 0; i + l < n; ++l) step(i + l, static_cast<int>(l));
  *s0 = combine(a0);
  *g1 = combine(a1);
  *g2 = combine(a2);
  *g3 = combine(a3);
}

double second_diff_sum(const double* w, const double* um, const double* up, double u2x,
                       std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[i + l] * ((u2x - um[i + l]) - up[i + l]);
  for (std::size_t l = 0; i + l < n; ++l) acc[l] += w[i + l] * ((u2x - um[i + l]) - up[i + l]);
  return combine(acc);
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}
void neg(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -a[i];
}
void vabs(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]);
}
void vsqrt(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(a[i]);
}
// min/max mirror the VMINPD/VMAXPD operand rule (second operand on ties/NaN)
void vmin(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}
void vmax(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}
void pospart(const double* a, double* out, std::size_t n) {
  // NaN passes through rather than collapsing to 0 (matches the AVX2 kernel)
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a[i] > 0.0 ? a[i] : (a[i] != a[i] ? a[i] : 0.0);
}
bool all_finite(const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

}  // namespace scalar

const Kernels& scalar_kernels() {
  static const Kernels k = {
      scalar::dot,          scalar::sum,          scalar::dist_sq_2d,  scalar::dist_sq_3d,
      scalar::sum_w_over_d2, scalar::sum_w_over_d3, scalar::grad_sums_2d, scalar::grad_sums_3d,
      scalar::second_diff_sum, scalar::add,       scalar::sub,         scalar::mul,
      scalar::div,          scalar::neg,          scalar::vabs,        scalar::vsqrt,
      scalar::vmin,         scalar::vmax,         scalar::pospart,     scalar::all_finite,
  };
  return k;
}

}  // namespace fraclap::simd
