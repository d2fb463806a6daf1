#include <atomic>
#include <cstdlib>
#include <cstring>

#include "fraclap/simd/kernels.hpp"

namespace fraclap::simd {

const Kernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
#endif

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

std::atomic<int> g_backend{-1};  // -1 = not yet resolved

Backend resolve_from_name(const char* name) {
  if (name && std::strcmp(name, "scalar") == 0) return Backend::scalar;
  if (name && std::strcmp(name, "avx2") == 0)
    return avx2_available() ? Backend::avx2 : Backend::scalar;
  // "auto" or anything else: pick the best available
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend resolve() {
  int cur = g_backend.load(std::memory_order_acquire);
  if (cur >= 0) return static_cast<Backend>(cur);
  Backend b = resolve_from_name(std::getenv("FRACLAP_SIMD"));
  g_backend.store(static_cast<int>(b), std::memory_order_release);
  return b;
}

}  // namespace

Backend active_backend() { return resolve(); }

Backend set_backend(const char* name) {
  Backend b = resolve_from_name(name);
  g_backend.store(static_cast<int>(b), std::memory_order_release);
  return b;
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

const Kernels& kernels_for(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::avx2) return avx2_kernels();
#endif
  (void)b;
  return scalar_kernels();
}

const Kernels& kernels() { return kernels_for(resolve()); }

}  // namespace fraclap::simd
