// src/kernels.cc

// Copyright 2026 The pianomt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runtime variant selection. Resolution order:
//   1. set_variant() if called,
//   2. PIANOMT_KERNELS environment variable (scalar|avx2|auto),
//   3. cpuid.

#include "pianomt/kernels.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_internal.h"

namespace pianomt {
namespace kernels {

namespace {

Variant detect_cpu() {
#if PIANOMT_HAVE_AVX2_BUILD
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Variant::kAvx2;
#endif
  return Variant::kScalar;
}

Variant resolve_from_env() {
  const char* env = std::getenv("PIANOMT_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Variant::kScalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (detect_cpu() != Variant::kAvx2)
        throw std::runtime_error(
            "PIANOMT_KERNELS=avx2 requested but CPU lacks AVX2/FMA");
      return Variant::kAvx2;
    }
    // Anything else (including "auto") falls through to detection.
  }
  return detect_cpu();
}

std::atomic<Variant> g_variant{Variant::kAuto};

Variant resolved() {
  Variant v = g_variant.load(std::memory_order_relaxed);
  if (v == Variant::kAuto) {
    v = resolve_from_env();
    g_variant.store(v, std::memory_order_relaxed);
  }
  return v;
}

}  // namespace

bool cpu_has_avx2() { return detect_cpu() == Variant::kAvx2; }

void set_variant(Variant v) {
  if (v == Variant::kAvx2 && detect_cpu() != Variant::kAvx2)
    throw std::runtime_error("AVX2 kernels requested but CPU lacks AVX2/FMA");
  if (v == Variant::kAuto)
    g_variant.store(resolve_from_env(), std::memory_order_relaxed);
  else
    g_variant.store(v, std::memory_order_relaxed);
}

Variant active_variant() { return resolved(); }

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kScalar:
      return "scalar";
    case Variant::kAvx2:
      return "avx2";
    default:
      return "auto";
  }
}

#if PIANOMT_HAVE_AVX2_BUILD
#define PIANOMT_DISPATCH(fn, ...)             \
  do {                                        \
    if (resolved() == Variant::kAvx2)         \
      return detail::avx2_##fn(__VA_ARGS__);  \
    return detail::scalar_##fn(__VA_ARGS__);  \
  } while (0)
#else
#define PIANOMT_DISPATCH(fn, ...) return detail::scalar_##fn(__VA_ARGS__)
#endif

void gemm_ab(int m, int n, int k, const float* a, int lda, const float* b,
             int ldb, float beta, float* c, int ldc) {
  PIANOMT_DISPATCH(gemm_ab, m, n, k, a, lda, b, ldb, beta, c, ldc);
}
void gemm_abt(int m, int n, int k, const float* a, int lda, const float* b,
              int ldb, float beta, float* c, int ldc) {
  PIANOMT_DISPATCH(gemm_abt, m, n, k, a, lda, b, ldb, beta, c, ldc);
}
void gemm_atb(int m, int n, int k, const float* a, int lda, const float* b,
              int ldb, float beta, float* c, int ldc) {
  PIANOMT_DISPATCH(gemm_atb, m, n, k, a, lda, b, ldb, beta, c, ldc);
}

void gemm_ab(int m, int n, int k, const double* a, int lda, const double* b,
             int ldb, double beta, double* c, int ldc) {
  detail::scalar_gemm_ab(m, n, k, a, lda, b, ldb, beta, c, ldc);
}
void gemm_abt(int m, int n, int k, const double* a, int lda, const double* b,
              int ldb, double beta, double* c, int ldc) {
  detail::scalar_gemm_abt(m, n, k, a, lda, b, ldb, beta, c, ldc);
}
void gemm_atb(int m, int n, int k, const double* a, int lda, const double* b,
              int ldb, double beta, double* c, int ldc) {
  detail::scalar_gemm_atb(m, n, k, a, lda, b, ldb, beta, c, ldc);
}

void elu_forward(const float* x, float* y, size_t n) {
  PIANOMT_DISPATCH(elu_forward, x, y, n);
}
void elu_backward(const float* y, const float* dy, float* dx, size_t n) {
  PIANOMT_DISPATCH(elu_backward, y, dy, dx, n);
}
void relu_st_forward(const float* x, float* y, size_t n) {
  PIANOMT_DISPATCH(relu_st_forward, x, y, n);
}
void sigmoid_forward(const float* x, float* y, size_t n) {
  PIANOMT_DISPATCH(sigmoid_forward, x, y, n);
}

void elu_forward(const double* x, double* y, size_t n) {
  detail::scalar_elu_forward(x, y, n);
}
void elu_backward(const double* y, const double* dy, double* dx, size_t n) {
  detail::scalar_elu_backward(y, dy, dx, n);
}
void relu_st_forward(const double* x, double* y, size_t n) {
  detail::scalar_relu_st_forward(x, y, n);
}
void sigmoid_forward(const double* x, double* y, size_t n) {
  detail::scalar_sigmoid_forward(x, y, n);
}

void axpy(size_t n, float alpha, const float* x, float* y) {
  PIANOMT_DISPATCH(axpy, n, alpha, x, y);
}
void axpy(size_t n, double alpha, const double* x, double* y) {
  detail::scalar_axpy(n, alpha, x, y);
}
void scale(size_t n, float alpha, const float* x, float* out) {
  PIANOMT_DISPATCH(scale, n, alpha, x, out);
}
void scale(size_t n, double alpha, const double* x, double* out) {
  detail::scalar_scale(n, alpha, x, out);
}
void add(size_t n, const float* x, const float* y, float* out) {
  PIANOMT_DISPATCH(add, n, x, y, out);
}
void add(size_t n, const double* x, const double* y, double* out) {
  detail::scalar_add(n, x, y, out);
}
void mul(size_t n, const float* x, const float* y, float* out) {
  PIANOMT_DISPATCH(mul, n, x, y, out);
}
void mul(size_t n, const double* x, const double* y, double* out) {
  detail::scalar_mul(n, x, y, out);
}

void nesterov_update(size_t n, float* theta, float* v, const float* g,
                     float eta, float mu) {
  PIANOMT_DISPATCH(nesterov_update, n, theta, v, g, eta, mu);
}
void nesterov_update(size_t n, double* theta, double* v, const double* g,
                     double eta, double mu) {
  detail::scalar_nesterov_update(n, theta, v, g, eta, mu);
}

uint64_t u64_at(uint64_t seed, uint64_t counter) {
  return detail::counter_u64(seed, counter);
}

void gaussian_fill(uint64_t seed, uint64_t counter_start, float sigma,
                   float* out, size_t n) {
  PIANOMT_DISPATCH(gaussian_fill, seed, counter_start, sigma, out, n);
}
void gaussian_fill(uint64_t seed, uint64_t counter_start, double sigma,
                   double* out, size_t n) {
  detail::scalar_gaussian_fill(seed, counter_start, sigma, out, n);
}

#undef PIANOMT_DISPATCH

}  // namespace kernels
}  // namespace pianomt
