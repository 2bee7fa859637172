// src/kernels_internal.h

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

#ifndef PIANOMT_KERNELS_INTERNAL_H_
#define PIANOMT_KERNELS_INTERNAL_H_

#include <cstddef>
#include <cstdint>

namespace pianomt {
namespace kernels {
namespace detail {

// splitmix64-style bijective mix of (seed, counter); shared by both variants.
inline uint64_t counter_u64(uint64_t seed, uint64_t counter) {
  uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Scalar reference implementations (always available, any T).
template <typename T>
void scalar_gemm_ab(int m, int n, int k, const T* a, int lda, const T* b,
                    int ldb, T beta, T* c, int ldc);
template <typename T>
void scalar_gemm_abt(int m, int n, int k, const T* a, int lda, const T* b,
                     int ldb, T beta, T* c, int ldc);
template <typename T>
void scalar_gemm_atb(int m, int n, int k, const T* a, int lda, const T* b,
                     int ldb, T beta, T* c, int ldc);

template <typename T>
void scalar_elu_forward(const T* x, T* y, size_t n);
template <typename T>
void scalar_elu_backward(const T* y, const T* dy, T* dx, size_t n);
template <typename T>
void scalar_relu_st_forward(const T* x, T* y, size_t n);
template <typename T>
void scalar_sigmoid_forward(const T* x, T* y, size_t n);
template <typename T>
void scalar_axpy(size_t n, T alpha, const T* x, T* y);
template <typename T>
void scalar_scale(size_t n, T alpha, const T* x, T* out);
template <typename T>
void scalar_add(size_t n, const T* x, const T* y, T* out);
template <typename T>
void scalar_mul(size_t n, const T* x, const T* y, T* out);
template <typename T>
void scalar_nesterov_update(size_t n, T* theta, T* v, const T* g, T eta, T mu);
template <typename T>
void scalar_gaussian_fill(uint64_t seed, uint64_t counter_start, T sigma,
                          T* out, size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define PIANOMT_HAVE_AVX2_BUILD 1
void avx2_gemm_ab(int m, int n, int k, const float* a, int lda, const float* b,
                  int ldb, float beta, float* c, int ldc);
void avx2_gemm_abt(int m, int n, int k, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc);
void avx2_gemm_atb(int m, int n, int k, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc);
void avx2_elu_forward(const float* x, float* y, size_t n);
void avx2_elu_backward(const float* y, const float* dy, float* dx, size_t n);
void avx2_relu_st_forward(const float* x, float* y, size_t n);
void avx2_sigmoid_forward(const float* x, float* y, size_t n);
void avx2_axpy(size_t n, float alpha, const float* x, float* y);
void avx2_scale(size_t n, float alpha, const float* x, float* out);
void avx2_add(size_t n, const float* x, const float* y, float* out);
void avx2_mul(size_t n, const float* x, const float* y, float* out);
void avx2_nesterov_update(size_t n, float* theta, float* v, const float* g,
                          float eta, float mu);
void avx2_gaussian_fill(uint64_t seed, uint64_t counter_start, float sigma,
                        float* out, size_t n);
#else
#define PIANOMT_HAVE_AVX2_BUILD 0
#endif

}  // namespace detail
}  // namespace kernels
}  // namespace pianomt

#endif  // PIANOMT_KERNELS_INTERNAL_H_
