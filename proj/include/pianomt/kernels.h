// include/pianomt/kernels.h

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

#ifndef PIANOMT_KERNELS_H_
#define PIANOMT_KERNELS_H_

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the feature, autodiff and trainer code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The variant is chosen once at runtime (cpuid), can be
// forced with set_variant() or the PIANOMT_KERNELS environment variable
// (scalar|avx2|auto), and the two variants are equivalence-tested against
// each other in tests/test_kernels.cc. float64 entry points always run the
// scalar reference path; they exist for the autodiff engine's
// gradient-check mode.

namespace pianomt {
namespace kernels {

enum class Variant { kAuto, kScalar, kAvx2 };

// True if the running CPU supports the AVX2+FMA variant.
bool cpu_has_avx2();

// Forces a variant process-wide. kAuto re-enables cpuid detection.
// Requesting kAvx2 on a CPU without AVX2 throws std::runtime_error.
void set_variant(Variant v);

// The variant actually dispatched to (never kAuto).
Variant active_variant();
const char* variant_name(Variant v);

// ---------------------------------------------------------------------------
// GEMM, row-major. The three contraction forms cover convolution and dense
// layers in both directions:
//   gemm_ab : C(m x n) = A(m x k) * B(k x n)       + beta * C
//   gemm_abt: C(m x n) = A(m x k) * B(n x k)^T     + beta * C
//   gemm_atb: C(m x n) = A(k x m)^T * B(k x n)     + beta * C
// beta is 0 (overwrite; C may be uninitialized) or any scalar.
// ---------------------------------------------------------------------------
void gemm_ab(int m, int n, int k, const float* a, int lda, const float* b,
             int ldb, float beta, float* c, int ldc);
void gemm_abt(int m, int n, int k, const float* a, int lda, const float* b,
              int ldb, float beta, float* c, int ldc);
void gemm_atb(int m, int n, int k, const float* a, int lda, const float* b,
              int ldb, float beta, float* c, int ldc);

void gemm_ab(int m, int n, int k, const double* a, int lda, const double* b,
             int ldb, double beta, double* c, int ldc);
void gemm_abt(int m, int n, int k, const double* a, int lda, const double* b,
              int ldb, double beta, double* c, int ldc);
void gemm_atb(int m, int n, int k, const double* a, int lda, const double* b,
              int ldb, double beta, double* c, int ldc);

// ---------------------------------------------------------------------------
// Elementwise. Backward kernels accumulate into dx (dx += ...).
// elu uses alpha = 1: y = x > 0 ? x : exp(x) - 1, and its backward derives
// the slope from the stored forward value: d = y > 0 ? 1 : y + 1.
// ---------------------------------------------------------------------------
void elu_forward(const float* x, float* y, size_t n);
void elu_backward(const float* y, const float* dy, float* dx, size_t n);
void relu_st_forward(const float* x, float* y, size_t n);
void sigmoid_forward(const float* x, float* y, size_t n);

void elu_forward(const double* x, double* y, size_t n);
void elu_backward(const double* y, const double* dy, double* dx, size_t n);
void relu_st_forward(const double* x, double* y, size_t n);
void sigmoid_forward(const double* x, double* y, size_t n);

// y += alpha * x
void axpy(size_t n, float alpha, const float* x, float* y);
void axpy(size_t n, double alpha, const double* x, double* y);
// out = alpha * x
void scale(size_t n, float alpha, const float* x, float* out);
void scale(size_t n, double alpha, const double* x, double* out);
// out = x + y / out = x * y
void add(size_t n, const float* x, const float* y, float* out);
void add(size_t n, const double* x, const double* y, double* out);
void mul(size_t n, const float* x, const float* y, float* out);
void mul(size_t n, const double* x, const double* y, double* out);

// Nesterov momentum update: v <- mu*v - eta*g; theta <- theta + mu*v - eta*g.
// Written with separate mul/add (no FMA) so scalar and AVX2 agree bitwise.
void nesterov_update(size_t n, float* theta, float* v, const float* g,
                     float eta, float mu);
void nesterov_update(size_t n, double* theta, double* v, const double* g,
                     double eta, double mu);

// ---------------------------------------------------------------------------
// Counter-based RNG primitives. u64_at is a pure function of (seed, counter);
// gaussian_fill writes n ~ N(0, sigma^2) floats where the pair
// (out[2i], out[2i+1]) is a Box-Muller transform of the uniforms at counters
// counter_start + 2i and counter_start + 2i + 1. A fill of n values consumes
// 2*ceil(n/2) counters.
// ---------------------------------------------------------------------------
uint64_t u64_at(uint64_t seed, uint64_t counter);
void gaussian_fill(uint64_t seed, uint64_t counter_start, float sigma,
                   float* out, size_t n);
void gaussian_fill(uint64_t seed, uint64_t counter_start, double sigma,
                   double* out, size_t n);

}  // namespace kernels
}  // namespace pianomt

#endif  // PIANOMT_KERNELS_H_
