// src/kernels_scalar.cc

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

// Reference kernels. These define the semantics the AVX2 variants are tested
// against; keep them simple and in-order (k ascending for every C element).

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernels_internal.h"

namespace pianomt {
namespace kernels {
namespace detail {

template <typename T>
void scalar_gemm_ab(int m, int n, int k, const T* a, int lda, const T* b,
                    int ldb, T beta, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      T acc = 0;
      for (int l = 0; l < k; ++l) {
        acc += a[static_cast<size_t>(i) * lda + l] *
               b[static_cast<size_t>(l) * ldb + j];
      }
      T* out = &c[static_cast<size_t>(i) * ldc + j];
      *out = (beta == T(0)) ? acc : beta * *out + acc;
    }
  }
}

template <typename T>
void scalar_gemm_abt(int m, int n, int k, const T* a, int lda, const T* b,
                     int ldb, T beta, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      T acc = 0;
      for (int l = 0; l < k; ++l) {
        acc += a[static_cast<size_t>(i) * lda + l] *
               b[static_cast<size_t>(j) * ldb + l];
      }
      T* out = &c[static_cast<size_t>(i) * ldc + j];
      *out = (beta == T(0)) ? acc : beta * *out + acc;
    }
  }
}

template <typename T>
void scalar_gemm_atb(int m, int n, int k, const T* a, int lda, const T* b,
                     int ldb, T beta, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      T acc = 0;
      for (int l = 0; l < k; ++l) {
        acc += a[static_cast<size_t>(l) * lda + i] *
               b[static_cast<size_t>(l) * ldb + j];
      }
      T* out = &c[static_cast<size_t>(i) * ldc + j];
      *out = (beta == T(0)) ? acc : beta * *out + acc;
    }
  }
}

template <typename T>
void scalar_elu_forward(const T* x, T* y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    y[i] = x[i] > T(0) ? x[i] : std::exp(x[i]) - T(1);
  }
}

template <typename T>
void scalar_elu_backward(const T* y, const T* dy, T* dx, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    dx[i] += dy[i] * (y[i] > T(0) ? T(1) : y[i] + T(1));
  }
}

template <typename T>
void scalar_relu_st_forward(const T* x, T* y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    y[i] = x[i] > T(0) ? x[i] : T(0);
  }
}

template <typename T>
void scalar_sigmoid_forward(const T* x, T* y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    y[i] = T(1) / (T(1) + std::exp(-x[i]));
  }
}

template <typename T>
void scalar_axpy(size_t n, T alpha, const T* x, T* y) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void scalar_scale(size_t n, T alpha, const T* x, T* out) {
  for (size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

template <typename T>
void scalar_add(size_t n, const T* x, const T* y, T* out) {
  for (size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

template <typename T>
void scalar_mul(size_t n, const T* x, const T* y, T* out) {
  for (size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

template <typename T>
void scalar_nesterov_update(size_t n, T* theta, T* v, const T* g, T eta,
                            T mu) {
  for (size_t i = 0; i < n; ++i) {
    T vn = mu * v[i] - eta * g[i];
    v[i] = vn;
    theta[i] = theta[i] + mu * vn - eta * g[i];
  }
}

namespace {

// Uniform in (0, 1) from the top 24 bits; never 0, so log() is finite.
inline float u24(uint64_t bits) {
  return (static_cast<float>(bits >> 40) + 0.5f) * 0x1p-24f;
}
inline double u53(uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

template <typename T>
void scalar_gaussian_fill(uint64_t seed, uint64_t counter_start, T sigma,
                          T* out, size_t n) {
  uint64_t c = counter_start;
  size_t i = 0;
  while (i < n) {
    uint64_t b0 = counter_u64(seed, c);
    uint64_t b1 = counter_u64(seed, c + 1);
    c += 2;
    if constexpr (sizeof(T) == 4) {
      float u1 = u24(b0);
      float u2 = u24(b1);
      float r = std::sqrt(-2.0f * std::log(u1));
      float z0 = r * std::cos(6.28318530717958647692f * u2);
      float z1 = r * std::sin(6.28318530717958647692f * u2);
      out[i++] = sigma * z0;
      if (i < n) out[i++] = sigma * z1;
    } else {
      double u1 = u53(b0);
      double u2 = u53(b1);
      double r = std::sqrt(-2.0 * std::log(u1));
      double z0 = r * std::cos(6.28318530717958647692 * u2);
      double z1 = r * std::sin(6.28318530717958647692 * u2);
      out[i++] = sigma * z0;
      if (i < n) out[i++] = sigma * z1;
    }
  }
}

// Explicit instantiations.
#define PIANOMT_INSTANTIATE(T)                                                \
  template void scalar_gemm_ab<T>(int, int, int, const T*, int, const T*,    \
                                  int, T, T*, int);                           \
  template void scalar_gemm_abt<T>(int, int, int, const T*, int, const T*,   \
                                   int, T, T*, int);                          \
  template void scalar_gemm_atb<T>(int, int, int, const T*, int, const T*,   \
                                   int, T, T*, int);                          \
  template void scalar_elu_forward<T>(const T*, T*, size_t);                  \
  template void scalar_elu_backward<T>(const T*, const T*, T*, size_t);      \
  template void scalar_relu_st_forward<T>(const T*, T*, size_t);              \
  template void scalar_sigmoid_forward<T>(const T*, T*, size_t);              \
  template void scalar_axpy<T>(size_t, T, const T*, T*);                      \
  template void scalar_scale<T>(size_t, T, const T*, T*);                     \
  template void scalar_add<T>(size_t, const T*, const T*, T*);                \
  template void scalar_mul<T>(size_t, const T*, const T*, T*);                \
  template void scalar_nesterov_update<T>(size_t, T*, T*, const T*, T, T);    \
  template void scalar_gaussian_fill<T>(uint64_t, uint64_t, T, T*, size_t);

PIANOMT_INSTANTIATE(float)
PIANOMT_INSTANTIATE(double)
#undef PIANOMT_INSTANTIATE

}  // namespace detail
}  // namespace kernels
}  // namespace pianomt
