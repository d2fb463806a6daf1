// AVX2 variants.  Tails shorter than a vector are folded into the lane
// accumulators in lane order, matching the scalar reference exactly.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {
namespace avx2 {

namespace {
inline double combine(const __m256d acc) {
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  return (a[0] + a[2]) + (a[1] + a[3]);
}
inline double combine4(const double a[4]) { return (a[0] + a[2]) + (a[1] + a[3]); }
}  // namespace

double dot(const double* w, const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i)));
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  for (std::size_t l = 0; i + l < n; ++l) a[l] += w[i + l] * v[i + l];
  return combine4(a);
}

double sum(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  for (std::size_t l = 0; i + l < n; ++l) a[l] += v[i + l];
  return combine4(a);
}

void dist_sq_2d(double px, double py, const double* xs, const double* ys, double* out,
                std::size_t n) {
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(xs + i));
    __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(ys + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; i < n; ++i) {
    double dx = px - xs[i], dy = py - ys[i];
    out[i] = dx * dx + dy * dy;
  }
}

void dist_sq_3d(double px, double py, double pz, const double* xs, const double* ys,
                const double* zs, double* out, std::size_t n) {
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py), vpz = _mm256_set1_pd(pz);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(xs + i));
    __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(ys + i));
    __m256d dz = _mm256_sub_pd(vpz, _mm256_loadu_pd(zs + i));
    __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_add_pd(s, _mm256_mul_pd(dz, dz)));
  }
  for (; i < n; ++i) {
    double dx = px - xs[i], dy = py - ys[i], dz = pz - zs[i];
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

double sum_w_over_d2(const double* w, const double* d2, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(d2 + i)));
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  for (std::size_t l = 0; i + l < n; ++l) a[l] += w[i + l] / d2[i + l];
  return combine4(a);
}

double sum_w_over_d3(const double* w, const double* d2, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v2 = _mm256_loadu_pd(d2 + i);
    __m256d d3 = _mm256_mul_pd(v2, _mm256_sqrt_pd(v2));
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), d3));
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  for (std::size_t l = 0; i + l < n; ++l) a[l] += w[i + l] / (d2[i + l] * std::sqrt(d2[i + l]));
  return combine4(a);
}

void grad_sums_2d(double px, double py, const double* xs, const double* ys, const double* w,
                  std::size_t n, double* s0, double* g1, double* g2) {
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(xs + i));
    __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(ys + i));
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    __m256d wd2 = _mm256_div_pd(_mm256_loadu_pd(w + i), d2);
    __m256d wd4 = _mm256_div_pd(wd2, d2);
    acc0 = _mm256_add_pd(acc0, wd2);
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(dx, wd4));
    acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(dy, wd4));
  }
  alignas(32) double a0[4], a1[4], a2[4];
  _mm256_store_pd(a0, acc0);
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  for (std::size_t l = 0; i + l < n; ++l) {
    double dx = px - xs[i + l], dy = py - ys[i + l];
    double d2 = dx * dx + dy * dy;
    double wd2 = w[i + l] / d2;
    double wd4 = wd2 / d2;
    a0[l] += wd2;
    a1[l] += dx * wd4;
    a2[l] += dy * wd4;
  }
  *s0 = combine4(a0);
  *g1 = combine4(a1);
  *g2 = combine4(a2);
}

void grad_sums_3d(double px, double py, double pz, const double* xs, const double* ys,
                  const double* zs, const double* w, std::size_t n, double* s0, double* g1,
                  double* g2, double* g3) {
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py), vpz = _mm256_set1_pd(pz);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd(), acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(xs + i));
    __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(ys + i));
    __m256d dz = _mm256_sub_pd(vpz, _mm256_loadu_pd(zs + i));
    __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                               _mm256_mul_pd(dz, dz));
    __m256d d3 = _mm256_mul_pd(d2, _mm256_sqrt_pd(d2));
    __m256d wd3 = _mm256_div_pd(_mm256_loadu_pd(w + i), d3);
    __m256d wd5 = _mm256_div_pd(wd3, d2);
    acc0 = _mm256_add_pd(acc0, wd3);
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(dx, wd5));
    acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(dy, wd5));
    acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(dz, wd5));
  }
  alignas(32) double a0[4], a1[4], a2[4], a3[4];
  _mm256_store_pd(a0, acc0);
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  _mm256_store_pd(a3, acc3);
  for (std::size_t l = 0; i + l < n; ++l) {
    double dx = px - xs[i + l], dy = py - ys[i + l], dz = pz - zs[i + l];
    double d2 = (dx * dx + dy * dy) + dz * dz;
    double d1 = std::sqrt(d2);
    double wd3 = w[i + l] / (d2 * d1);
    double wd5 = wd3 / d2;
    a0[l] += wd3;
    a1[l] += dx * wd5;
    a2[l] += dy * wd5;
    a3[l] += dz * wd5;
  }
  *s0 = combine4(a0);
  *g1 = combine4(a1);
  *g2 = combine4(a2);
  *g3 = combine4(a3);
}

double second_diff_sum(const double* w, const double* um, const double* up, double u2x,
                       std::size_t n) {
  const __m256d v2x = _mm256_set1_pd(u2x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_sub_pd(v2x, _mm256_loadu_pd(um + i)),
                              _mm256_loadu_pd(up + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), d));
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  for (std::size_t l = 0; i + l < n; ++l) a[l] += w[i + l] * ((u2x - um[i + l]) - up[i + l]);
  return combine4(a);
}

#define FRACLAP_AVX2_BINOP(NAME, VOP, SOP)                                        \
  void NAME(const double* a, const double* b, double* out, std::size_t n) {      \
    std::size_t i = 0;                                                           \
    for (; i + 4 <= n; i += 4)                                                   \
      _mm256_storeu_pd(out + i, VOP(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))); \
    for (; i < n; ++i) out[i] = SOP;                                             \
  }

FRACLAP_AVX2_BINOP(add, _mm256_add_pd, a[i] + b[i])
FRACLAP_AVX2_BINOP(sub, _mm256_sub_pd, a[i] - b[i])
FRACLAP_AVX2_BINOP(mul, _mm256_mul_pd, a[i] * b[i])
FRACLAP_AVX2_BINOP(div, _mm256_div_pd, a[i] / b[i])
FRACLAP_AVX2_BINOP(vmin, _mm256_min_pd, (a[i] < b[i] ? a[i] : b[i]))
FRACLAP_AVX2_BINOP(vmax, _mm256_max_pd, (a[i] > b[i] ? a[i] : b[i]))
#undef FRACLAP_AVX2_BINOP

void neg(const double* a, double* out, std::size_t n) {
  const __m256d z = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sub_pd(z, _mm256_loadu_pd(a + i)));
  for (; i < n; ++i) out[i] = -a[i];
}

void vabs(const double* a, double* out, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_and_pd(mask, _mm256_loadu_pd(a + i)));
  for (; i < n; ++i) out[i] = std::fabs(a[i]);
}

void vsqrt(const double* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(a + i)));
  for (; i < n; ++i) out[i] = std::sqrt(a[i]);
}

void pospart(const double* a, double* out, std::size_t n) {
  const __m256d z = _mm256_setzero_pd();
  std::size_t i = 0;
  // VMAXPD(a, 0): second operand returned on NaN, so NaN inputs propagate to 0?
  // No: (a > 0) false for NaN -> returns second operand 0, which would hide a
  // NaN.  Use a comparison mask instead so NaN stays NaN.
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    __m256d keep = _mm256_cmp_pd(v, z, _CMP_GT_OQ);
    __m256d nan = _mm256_cmp_pd(v, v, _CMP_UNORD_Q);
    __m256d r = _mm256_and_pd(v, _mm256_or_pd(keep, nan));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : (a[i] != a[i] ? a[i] : 0.0);
}

bool all_finite(const double* a, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d inf = _mm256_set1_pd(__builtin_inf());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_and_pd(mask, _mm256_loadu_pd(a + i));
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, inf, _CMP_GE_OQ)) != 0) return false;
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, v, _CMP_UNORD_Q)) != 0) return false;
  }
  for (; i < n; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

}  // namespace avx2

const Kernels& avx2_kernels() {
  static const Kernels k = {
      avx2::dot,          avx2::sum,          avx2::dist_sq_2d,  avx2::dist_sq_3d,
      avx2::sum_w_over_d2, avx2::sum_w_over_d3, avx2::grad_sums_2d, avx2::grad_sums_3d,
      avx2::second_diff_sum, avx2::add,       avx2::sub,         avx2::mul,
      avx2::div,          avx2::neg,          avx2::vabs,        avx2::vsqrt,
      avx2::vmin,         avx2::vmax,         avx2::pospart,     avx2::all_finite,
  };
  return k;
}

}  // namespace fraclap::simd

#endif  // x86_64
