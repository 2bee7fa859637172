// src/kernels_avx2.cc

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

// AVX2+FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; it must not be entered unless cpu_has_avx2() is true.
//
// Numerics contract (checked by tests/test_kernels.cc):
//   - relu_st/axpy/scale/add/mul/nesterov_update match the scalar reference
//     bitwise (mul+add, no FMA contraction).
//   - gemm_* match within a small relative tolerance (FMA keeps products
//     unrounded; abt additionally sums k in 8-wide partial lanes).
//   - elu/sigmoid/gaussian_fill use polynomial exp/log/sincos and match libm
//     to ~1e-6 relative.

#include "kernels_internal.h"

#if PIANOMT_HAVE_AVX2_BUILD

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <vector>

namespace pianomt {
namespace kernels {
namespace detail {

namespace {

// ---------------------------------------------------------------------------
// Vector math. Cephes-style single precision polynomials.
// ---------------------------------------------------------------------------

inline __m256 v_expf(__m256 x) {
  const __m256 max_x = _mm256_set1_ps(88.3762626647949f);
  const __m256 min_x = _mm256_set1_ps(-88.3762626647949f);
  const __m256 log2e = _mm256_set1_ps(1.44269504088896341f);
  const __m256 c1 = _mm256_set1_ps(0.693359375f);
  const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
  const __m256 one = _mm256_set1_ps(1.0f);

  x = _mm256_min_ps(x, max_x);
  x = _mm256_max_ps(x, min_x);

  __m256 fx = _mm256_fmadd_ps(x, log2e, _mm256_set1_ps(0.5f));
  fx = _mm256_floor_ps(fx);

  x = _mm256_fnmadd_ps(fx, c1, x);
  x = _mm256_fnmadd_ps(fx, c2, x);

  __m256 z = _mm256_mul_ps(x, x);
  __m256 y = _mm256_set1_ps(1.9875691500e-4f);
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.3981999507e-3f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(8.3334519073e-3f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(4.1665795894e-2f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.6666665459e-1f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(5.0000001201e-1f));
  y = _mm256_fmadd_ps(y, z, x);
  y = _mm256_add_ps(y, one);

  __m256i n = _mm256_cvtps_epi32(fx);
  n = _mm256_add_epi32(n, _mm256_set1_epi32(127));
  n = _mm256_slli_epi32(n, 23);
  return _mm256_mul_ps(y, _mm256_castsi256_ps(n));
}

// Requires x > 0 (callers guarantee it).
inline __m256 v_logf(__m256 x) {
  const __m256i mant_mask = _mm256_set1_epi32(0x807fffff);
  const __m256i half_bits = _mm256_set1_epi32(0x3f000000);
  const __m256 sqrthf = _mm256_set1_ps(0.707106781186547524f);
  const __m256 one = _mm256_set1_ps(1.0f);

  __m256i xi = _mm256_castps_si256(x);
  __m256i ei = _mm256_sub_epi32(_mm256_srli_epi32(xi, 23),
                                _mm256_set1_epi32(126));
  __m256 e = _mm256_cvtepi32_ps(ei);
  // mantissa in [0.5, 1)
  __m256 m = _mm256_castsi256_ps(
      _mm256_or_si256(_mm256_and_si256(xi, mant_mask), half_bits));

  __m256 below = _mm256_cmp_ps(m, sqrthf, _CMP_LT_OQ);
  e = _mm256_sub_ps(e, _mm256_and_ps(below, one));
  m = _mm256_add_ps(m, _mm256_and_ps(below, m));
  m = _mm256_sub_ps(m, one);

  __m256 z = _mm256_mul_ps(m, m);
  __m256 y = _mm256_set1_ps(7.0376836292e-2f);
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(-1.1514610310e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(1.1676998740e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(-1.2420140846e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(1.4249322787e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(-1.6668057665e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(2.0000714765e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(-2.4999993993e-1f));
  y = _mm256_fmadd_ps(y, m, _mm256_set1_ps(3.3333331174e-1f));
  y = _mm256_mul_ps(y, _mm256_mul_ps(m, z));

  y = _mm256_fmadd_ps(e, _mm256_set1_ps(-2.12194440e-4f), y);
  y = _mm256_fnmadd_ps(_mm256_set1_ps(0.5f), z, y);
  __m256 r = _mm256_add_ps(m, y);
  return _mm256_fmadd_ps(e, _mm256_set1_ps(0.693359375f), r);
}

// sin(2*pi*u) and cos(2*pi*u) for u in [0, 1).
inline void v_sincos_2pi(__m256 u, __m256* sin_out, __m256* cos_out) {
  const __m256 half_pi = _mm256_set1_ps(1.5707963267948966f);

  __m256 t = _mm256_mul_ps(u, _mm256_set1_ps(4.0f));
  __m256 q = _mm256_round_ps(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256 r = _mm256_mul_ps(_mm256_sub_ps(t, q), half_pi);
  __m256i qi = _mm256_cvtps_epi32(q);

  __m256 z = _mm256_mul_ps(r, r);
  __m256 sinp = _mm256_set1_ps(-1.9515295891e-4f);
  sinp = _mm256_fmadd_ps(sinp, z, _mm256_set1_ps(8.3321608736e-3f));
  sinp = _mm256_fmadd_ps(sinp, z, _mm256_set1_ps(-1.6666654611e-1f));
  sinp = _mm256_fmadd_ps(_mm256_mul_ps(sinp, z), r, r);

  __m256 cosp = _mm256_set1_ps(2.443315711809948e-5f);
  cosp = _mm256_fmadd_ps(cosp, z, _mm256_set1_ps(-1.388731625493765e-3f));
  cosp = _mm256_fmadd_ps(cosp, z, _mm256_set1_ps(4.166664568298827e-2f));
  cosp = _mm256_mul_ps(cosp, _mm256_mul_ps(z, z));
  cosp = _mm256_fnmadd_ps(_mm256_set1_ps(0.5f), z, cosp);
  cosp = _mm256_add_ps(cosp, _mm256_set1_ps(1.0f));

  __m256 swap = _mm256_castsi256_ps(_mm256_cmpgt_epi32(
      _mm256_and_si256(qi, _mm256_set1_epi32(1)), _mm256_setzero_si256()));

  __m256 s = _mm256_blendv_ps(sinp, cosp, swap);
  __m256 c = _mm256_blendv_ps(cosp, sinp, swap);

  // sign(sin) = bit1 of q; sign(cos) = bit1 of q+1.
  __m256 sgn_s = _mm256_castsi256_ps(
      _mm256_slli_epi32(_mm256_and_si256(qi, _mm256_set1_epi32(2)), 30));
  __m256 sgn_c = _mm256_castsi256_ps(_mm256_slli_epi32(
      _mm256_and_si256(_mm256_add_epi32(qi, _mm256_set1_epi32(1)),
                       _mm256_set1_epi32(2)),
      30));
  *sin_out = _mm256_xor_ps(s, sgn_s);
  *cos_out = _mm256_xor_ps(c, sgn_c);
}

inline __m256i tail_mask(int width) {
  alignas(32) static const int32_t kMask[16] = {-1, -1, -1, -1, -1, -1, -1, -1,
                                                0,  0,  0,  0,  0,  0,  0,  0};
  return _mm256_loadu_si256(
      reinterpret_cast<const __m256i*>(kMask + 8 - width));
}

// ---------------------------------------------------------------------------
// GEMM, broadcast form. Covers gemm_ab (ars=lda, aks=1) and gemm_atb
// (ars=1, aks=lda): element a(i, l) sits at a + i*ars + l*aks.
// ---------------------------------------------------------------------------

template <int MR>
inline void kern_cols16(int k, const float* a, size_t ars, size_t aks,
                        const float* b, size_t ldb, float beta, float* c,
                        size_t ldc) {
  __m256 acc0[MR], acc1[MR];
  for (int r = 0; r < MR; ++r) {
    acc0[r] = _mm256_setzero_ps();
    acc1[r] = _mm256_setzero_ps();
  }
  const float* pb = b;
  const float* pa[MR];
  for (int r = 0; r < MR; ++r) pa[r] = a + r * ars;
  for (int l = 0; l < k; ++l) {
    __m256 b0 = _mm256_loadu_ps(pb);
    __m256 b1 = _mm256_loadu_ps(pb + 8);
    pb += ldb;
    for (int r = 0; r < MR; ++r) {
      __m256 va = _mm256_broadcast_ss(pa[r]);
      pa[r] += aks;
      acc0[r] = _mm256_fmadd_ps(va, b0, acc0[r]);
      acc1[r] = _mm256_fmadd_ps(va, b1, acc1[r]);
    }
  }
  for (int r = 0; r < MR; ++r) {
    float* pc = c + r * ldc;
    if (beta == 0.0f) {
      _mm256_storeu_ps(pc, acc0[r]);
      _mm256_storeu_ps(pc + 8, acc1[r]);
    } else {
      __m256 vb = _mm256_set1_ps(beta);
      _mm256_storeu_ps(pc, _mm256_fmadd_ps(vb, _mm256_loadu_ps(pc), acc0[r]));
      _mm256_storeu_ps(
          pc + 8, _mm256_fmadd_ps(vb, _mm256_loadu_ps(pc + 8), acc1[r]));
    }
  }
}

template <int MR, bool kMasked>
inline void kern_cols8(int k, const float* a, size_t ars, size_t aks,
                       const float* b, size_t ldb, float beta, float* c,
                       size_t ldc, __m256i mask) {
  __m256 acc[MR];
  for (int r = 0; r < MR; ++r) acc[r] = _mm256_setzero_ps();
  const float* pb = b;
  const float* pa[MR];
  for (int r = 0; r < MR; ++r) pa[r] = a + r * ars;
  for (int l = 0; l < k; ++l) {
    __m256 b0 = kMasked ? _mm256_maskload_ps(pb, mask) : _mm256_loadu_ps(pb);
    pb += ldb;
    for (int r = 0; r < MR; ++r) {
      __m256 va = _mm256_broadcast_ss(pa[r]);
      pa[r] += aks;
      acc[r] = _mm256_fmadd_ps(va, b0, acc[r]);
    }
  }
  for (int r = 0; r < MR; ++r) {
    float* pc = c + r * ldc;
    if (beta == 0.0f) {
      if (kMasked)
        _mm256_maskstore_ps(pc, mask, acc[r]);
      else
        _mm256_storeu_ps(pc, acc[r]);
    } else {
      __m256 vb = _mm256_set1_ps(beta);
      __m256 old = kMasked ? _mm256_maskload_ps(pc, mask) : _mm256_loadu_ps(pc);
      __m256 res = _mm256_fmadd_ps(vb, old, acc[r]);
      if (kMasked)
        _mm256_maskstore_ps(pc, mask, res);
      else
        _mm256_storeu_ps(pc, res);
    }
  }
}

// One column panel (16 / 8 / masked-tail wide), one k chunk, all rows.
void gemm_bcast_panel(int m, int kc, const float* a, size_t ars, size_t aks,
                      const float* b, size_t ldb, float beta, float* c,
                      size_t ldc, int width, __m256i mask) {
  int i = 0;
#define PIANOMT_PANEL_ROWS(MR)                                              \
  {                                                                         \
    const float* pa = a + i * ars;                                          \
    float* pc = c + i * ldc;                                                \
    if (width == 16)                                                        \
      kern_cols16<MR>(kc, pa, ars, aks, b, ldb, beta, pc, ldc);             \
    else if (width == 8)                                                    \
      kern_cols8<MR, false>(kc, pa, ars, aks, b, ldb, beta, pc, ldc, mask); \
    else                                                                    \
      kern_cols8<MR, true>(kc, pa, ars, aks, b, ldb, beta, pc, ldc, mask);  \
  }
  for (; i + 6 <= m; i += 6) PIANOMT_PANEL_ROWS(6)
  switch (m - i) {
    case 5: PIANOMT_PANEL_ROWS(5) break;
    case 4: PIANOMT_PANEL_ROWS(4) break;
    case 3: PIANOMT_PANEL_ROWS(3) break;
    case 2: PIANOMT_PANEL_ROWS(2) break;
    case 1: PIANOMT_PANEL_ROWS(1) break;
    default: break;
  }
#undef PIANOMT_PANEL_ROWS
}

void gemm_bcast(int m, int n, int k, const float* a, size_t ars, size_t aks,
                const float* b, size_t ldb, float beta, float* c, size_t ldc) {
  constexpr int kChunk = 512;

  if (k == 0) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        c[i * ldc + j] = beta == 0.0f ? 0.0f : beta * c[i * ldc + j];
    return;
  }

  // Short contraction with a cache-resident B: sweep rows once, panels inner,
  // so the (usually much larger) A side streams through exactly once.
  if (k <= kChunk && static_cast<size_t>(k) * n * sizeof(float) <= 256 * 1024) {
    int i = 0;
#define PIANOMT_ROW_BLOCK(MR)                                                \
  {                                                                          \
    const float* pa = a + i * ars;                                           \
    float* pc = c + i * ldc;                                                 \
    int j = 0;                                                               \
    for (; j + 16 <= n; j += 16)                                             \
      kern_cols16<MR>(k, pa, ars, aks, b + j, ldb, beta, pc + j, ldc);       \
    if (j + 8 <= n) {                                                        \
      kern_cols8<MR, false>(k, pa, ars, aks, b + j, ldb, beta, pc + j, ldc,  \
                            _mm256_setzero_si256());                         \
      j += 8;                                                                \
    }                                                                        \
    if (j < n)                                                               \
      kern_cols8<MR, true>(k, pa, ars, aks, b + j, ldb, beta, pc + j, ldc,   \
                           tail_mask(n - j));                                \
  }
    for (; i + 6 <= m; i += 6) PIANOMT_ROW_BLOCK(6)
    switch (m - i) {
      case 5: PIANOMT_ROW_BLOCK(5) break;
      case 4: PIANOMT_ROW_BLOCK(4) break;
      case 3: PIANOMT_ROW_BLOCK(3) break;
      case 2: PIANOMT_ROW_BLOCK(2) break;
      case 1: PIANOMT_ROW_BLOCK(1) break;
      default: break;
    }
#undef PIANOMT_ROW_BLOCK
    return;
  }

  // Long contraction: panels outer, k chunks middle, rows inner. The B chunk
  // (kc x width) stays cache-hot across the row sweep and C accumulates
  // chunk by chunk.
  int j = 0;
  while (j < n) {
    int width;
    __m256i mask = _mm256_setzero_si256();
    if (n - j >= 16) {
      width = 16;
    } else if (n - j >= 8) {
      width = 8;
    } else {
      width = n - j;
      mask = tail_mask(width);
    }
    for (int k0 = 0; k0 < k; k0 += kChunk) {
      int kc = k < k0 + kChunk ? k - k0 : kChunk;
      float beta_eff = k0 == 0 ? beta : 1.0f;
      gemm_bcast_panel(m, kc, a + k0 * aks, ars, aks, b + k0 * ldb + j, ldb,
                       beta_eff, c + j, ldc, width, mask);
    }
    j += width == 16 ? 16 : (width == 8 ? 8 : width);
  }
}

}  // namespace

void avx2_gemm_ab(int m, int n, int k, const float* a, int lda, const float* b,
                  int ldb, float beta, float* c, int ldc) {
  gemm_bcast(m, n, k, a, static_cast<size_t>(lda), 1, b,
             static_cast<size_t>(ldb), beta, c, static_cast<size_t>(ldc));
}

void avx2_gemm_atb(int m, int n, int k, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc) {
  gemm_bcast(m, n, k, a, 1, static_cast<size_t>(lda), b,
             static_cast<size_t>(ldb), beta, c, static_cast<size_t>(ldc));
}

void avx2_gemm_abt(int m, int n, int k, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc) {
  // Repack B (n x k, row-major) as (k x n) and reuse the broadcast kernel; B
  // is the small operand (a weight matrix) in every hot call site, so the
  // O(n*k) transpose is noise next to the O(m*n*k) contraction.
  static thread_local std::vector<float> bt;
  bt.resize(static_cast<size_t>(k) * n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < k; ++l)
      bt[static_cast<size_t>(l) * n + j] = b[static_cast<size_t>(j) * ldb + l];
  gemm_bcast(m, n, k, a, static_cast<size_t>(lda), 1, bt.data(),
             static_cast<size_t>(n), beta, c, static_cast<size_t>(ldc));
}

// ---------------------------------------------------------------------------
// Elementwise.
// ---------------------------------------------------------------------------

void avx2_elu_forward(const float* x, float* y, size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  const __m256 one = _mm256_set1_ps(1.0f);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vx = _mm256_loadu_ps(x + i);
    __m256 neg = _mm256_sub_ps(v_expf(_mm256_min_ps(vx, zero)), one);
    __m256 pos_mask = _mm256_cmp_ps(vx, zero, _CMP_GT_OQ);
    _mm256_storeu_ps(y + i, _mm256_blendv_ps(neg, vx, pos_mask));
  }
  for (; i < n; ++i) y[i] = x[i] > 0.0f ? x[i] : std::exp(x[i]) - 1.0f;
}

void avx2_elu_backward(const float* y, const float* dy, float* dx, size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  const __m256 one = _mm256_set1_ps(1.0f);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vy = _mm256_loadu_ps(y + i);
    __m256 slope = _mm256_blendv_ps(_mm256_add_ps(vy, one), one,
                                    _mm256_cmp_ps(vy, zero, _CMP_GT_OQ));
    __m256 vdx = _mm256_loadu_ps(dx + i);
    vdx = _mm256_add_ps(vdx, _mm256_mul_ps(_mm256_loadu_ps(dy + i), slope));
    _mm256_storeu_ps(dx + i, vdx);
  }
  for (; i < n; ++i) dx[i] += dy[i] * (y[i] > 0.0f ? 1.0f : y[i] + 1.0f);
}

void avx2_relu_st_forward(const float* x, float* y, size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_max_ps(_mm256_loadu_ps(x + i), zero));
  for (; i < n; ++i) y[i] = x[i] > 0.0f ? x[i] : 0.0f;
}

void avx2_sigmoid_forward(const float* x, float* y, size_t n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vx = _mm256_loadu_ps(x + i);
    __m256 e = v_expf(_mm256_sub_ps(_mm256_setzero_ps(), vx));
    _mm256_storeu_ps(y + i, _mm256_div_ps(one, _mm256_add_ps(one, e)));
  }
  for (; i < n; ++i) y[i] = 1.0f / (1.0f + std::exp(-x[i]));
}

void avx2_axpy(size_t n, float alpha, const float* x, float* y) {
  const __m256 va = _mm256_set1_ps(alpha);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vy = _mm256_loadu_ps(y + i);
    vy = _mm256_add_ps(vy, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
    _mm256_storeu_ps(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void avx2_scale(size_t n, float alpha, const float* x, float* out) {
  const __m256 va = _mm256_set1_ps(alpha);
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(out + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
  for (; i < n; ++i) out[i] = alpha * x[i];
}

void avx2_add(size_t n, const float* x, const float* y, float* out) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(
        out + i, _mm256_add_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void avx2_mul(size_t n, const float* x, const float* y, float* out) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(
        out + i, _mm256_mul_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void avx2_nesterov_update(size_t n, float* theta, float* v, const float* g,
                          float eta, float mu) {
  const __m256 vmu = _mm256_set1_ps(mu);
  const __m256 veta = _mm256_set1_ps(eta);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vg = _mm256_loadu_ps(g + i);
    __m256 step = _mm256_mul_ps(veta, vg);
    __m256 vn = _mm256_sub_ps(_mm256_mul_ps(vmu, _mm256_loadu_ps(v + i)), step);
    _mm256_storeu_ps(v + i, vn);
    __m256 vt = _mm256_loadu_ps(theta + i);
    vt = _mm256_add_ps(vt, _mm256_sub_ps(_mm256_mul_ps(vmu, vn), step));
    _mm256_storeu_ps(theta + i, vt);
  }
  for (; i < n; ++i) {
    float vn = mu * v[i] - eta * g[i];
    v[i] = vn;
    theta[i] = theta[i] + mu * vn - eta * g[i];
  }
}

// ---------------------------------------------------------------------------
// Counter-based gaussian fill: scalar splitmix for the counters, vector
// Box-Muller for the transform.
// ---------------------------------------------------------------------------

void avx2_gaussian_fill(uint64_t seed, uint64_t counter_start, float sigma,
                        float* out, size_t n) {
  const __m256 vsigma = _mm256_set1_ps(sigma);
  const __m256 neg_two = _mm256_set1_ps(-2.0f);
  uint64_t c = counter_start;
  size_t i = 0;
  alignas(32) float f1[8];
  alignas(32) float f2[8];
  for (; i + 16 <= n; i += 16, c += 16) {
    for (int p = 0; p < 8; ++p) {
      f1[p] = (static_cast<float>(counter_u64(seed, c + 2 * p) >> 40) + 0.5f) *
              0x1p-24f;
      f2[p] =
          (static_cast<float>(counter_u64(seed, c + 2 * p + 1) >> 40) + 0.5f) *
          0x1p-24f;
    }
    __m256 u1 = _mm256_load_ps(f1);
    __m256 u2 = _mm256_load_ps(f2);
    __m256 r = _mm256_sqrt_ps(_mm256_mul_ps(neg_two, v_logf(u1)));
    __m256 s, co;
    v_sincos_2pi(u2, &s, &co);
    __m256 z0 = _mm256_mul_ps(vsigma, _mm256_mul_ps(r, co));
    __m256 z1 = _mm256_mul_ps(vsigma, _mm256_mul_ps(r, s));
    __m256 t0 = _mm256_unpacklo_ps(z0, z1);
    __m256 t1 = _mm256_unpackhi_ps(z0, z1);
    _mm256_storeu_ps(out + i, _mm256_permute2f128_ps(t0, t1, 0x20));
    _mm256_storeu_ps(out + i + 8, _mm256_permute2f128_ps(t0, t1, 0x31));
  }
  if (i < n) scalar_gaussian_fill<float>(seed, c, sigma, out + i, n - i);
}

}  // namespace detail
}  // namespace kernels
}  // namespace pianomt

#endif  // PIANOMT_HAVE_AVX2_BUILD
