// tools/bench_kernels.cc

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

// Developer utility: GFLOP/s of the GEMM forms on the shapes the trainer
// actually produces, per kernel variant. Not installed, not a test.

#include <chrono>
#include <cstdio>
#include <vector>

#include "pianomt/kernels.h"

using namespace pianomt;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void bench(const char* tag, char form, int m, int n, int k) {
  std::vector<float> a(static_cast<size_t>(m) * k + static_cast<size_t>(k) * m,
                       0.5f);
  std::vector<float> b(static_cast<size_t>(k) * n + static_cast<size_t>(n) * k,
                       0.25f);
  std::vector<float> c(static_cast<size_t>(m) * n, 0.0f);
  double flops = 2.0 * m * n * k;
  int reps = static_cast<int>(2e9 / flops) + 1;
  double t0 = now_s();
  for (int r = 0; r < reps; ++r) {
    switch (form) {
      case 'a':
        kernels::gemm_ab(m, n, k, a.data(), k, b.data(), n, 0.0f, c.data(), n);
        break;
      case 'b':
        kernels::gemm_abt(m, n, k, a.data(), k, b.data(), k, 0.0f, c.data(),
                          n);
        break;
      case 't':
        kernels::gemm_atb(m, n, k, a.data(), m, b.data(), n, 0.0f, c.data(),
                          n);
        break;
    }
  }
  double dt = now_s() - t0;
  std::printf("%-28s m=%6d n=%5d k=%5d  %7.2f GFLOP/s\n", tag, m, n, k,
              flops * reps / dt * 1e-9);
}

}  // namespace

int main() {
  std::printf("variant: %s\n",
              kernels::variant_name(kernels::active_variant()));
  // Hard-sharing batch-64 shapes (rows = N*OH*OW).
  bench("conv1 fwd (ab)", 'a', 81792, 32, 9);
  bench("conv2 fwd (ab)", 'a', 62720, 32, 288);
  bench("conv2 dW (atb)", 't', 288, 32, 62720);
  bench("conv2 dWT (atb)", 't', 32, 288, 62720);
  bench("conv2 dX (abt)", 'b', 62720, 288, 32);
  bench("conv3 fwd (ab)", 'a', 21760, 64, 288);
  bench("conv4 fwd (ab)", 'a', 384, 96, 6336);
  bench("conv4 dW (atb)", 't', 6336, 96, 384);
  bench("conv4 dX (abt)", 'b', 384, 6336, 96);
  bench("dense fwd (ab)", 'a', 64, 512, 192);
  bench("head fwd (ab)", 'a', 64, 88, 512);

  // gaussian_fill throughput
  std::vector<float> buf(1 << 22);
  double t0 = now_s();
  for (int r = 0; r < 8; ++r)
    kernels::gaussian_fill(42, static_cast<uint64_t>(r) * buf.size(), 0.1f,
                           buf.data(), buf.size());
  double dt = now_s() - t0;
  std::printf("gaussian_fill                %7.2f M samples/s\n",
              8.0 * buf.size() / dt * 1e-6);
  return 0;
}
