#pragma once

#include <cstddef>

namespace fraclap::simd {

// Runtime-selected backend for the data-parallel inner loops of the
// quadrature engines.  Both backends compute the same IEEE operation
// sequence per element and accumulate reductions into four lanes combined
// as (acc0+acc2)+(acc1+acc3), so their results are bit-identical; the
// equivalence suite asserts exact equality on random inputs.
enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);
// Force a backend ("scalar" / "avx2" / "auto"); also honored from the
// FRACLAP_SIMD environment variable at first use.  Returns the backend now
// active (requests for unavailable instruction sets fall back to scalar).
Backend set_backend(const char* name);

struct Kernels {
  // sum_i w[i] * v[i]
  double (*dot)(const double* w, const double* v, std::size_t n);
  // sum_i v[i]
  double (*sum)(const double* v, std::size_t n);
  // out[i] = (px - xs[i])^2 + (py - ys[i])^2
  void (*dist_sq_2d)(double px, double py, const double* xs, const double* ys,
                     double* out, std::size_t n);
  // out[i] = (px - xs[i])^2 + (py - ys[i])^2 + (pz - zs[i])^2
  void (*dist_sq_3d)(double px, double py, double pz, const double* xs, const double* ys,
                     const double* zs, double* out, std::size_t n);
  // sum_i w[i] / d2[i]                  ( |x-y|^-2 weights, n = 2 )
  double (*sum_w_over_d2)(const double* w, const double* d2, std::size_t n);
  // sum_i w[i] / (d2[i] * sqrt(d2[i]))  ( |x-y|^-3 weights, n = 3 )
  double (*sum_w_over_d3)(const double* w, const double* d2, std::size_t n);
  // Poisson gradient sums for n=2:
  //   s0 += w/d^2,  g1 += w*(px-xs)/d^4,  g2 += w*(py-ys)/d^4
  void (*grad_sums_2d)(double px, double py, const double* xs, const double* ys,
                       const double* w, std::size_t n, double* s0, double* g1, double* g2);
  // Poisson gradient sums for n=3 (d^3 and d^5 weights).
  void (*grad_sums_3d)(double px, double py, double pz, const double* xs, const double* ys,
                       const double* zs, const double* w, std::size_t n, double* s0,
                       double* g1, double* g2, double* g3);
  // sum_i w[i] * ((u2x - um[i]) - up[i])   with u2x = 2*u(x)
  double (*second_diff_sum)(const double* w, const double* um, const double* up,
                            double u2x, std::size_t n);
  // elementwise kernels used by the expression VM
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  void (*div)(const double* a, const double* b, double* out, std::size_t n);
  void (*neg)(const double* a, double* out, std::size_t n);
  void (*vabs)(const double* a, double* out, std::size_t n);
  void (*vsqrt)(const double* a, double* out, std::size_t n);
  void (*vmin)(const double* a, const double* b, double* out, std::size_t n);
  void (*vmax)(const double* a, const double* b, double* out, std::size_t n);
  void (*pospart)(const double* a, double* out, std::size_t n);
  // true iff every element is finite
  bool (*all_finite)(const double* a, std::size_t n);
};

// Kernel table for the active backend.
const Kernels& kernels();
// Kernel table for a specific backend (used by the equivalence tests).
const Kernels& kernels_for(Backend b);
bool avx2_available();

}  // namespace fraclap::simd
