// include/pianomt/rng.h

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

#ifndef PIANOMT_RNG_H_
#define PIANOMT_RNG_H_

#include <cmath>
#include <cstdint>

#include "pianomt/kernels.h"

namespace pianomt {

// Counter-based generator: every draw is a pure function of (seed, counter),
// so streams are reproducible bit-for-bit and independent of call batching.
// All randomness in the toolkit flows through this type; there is no
// wall-clock entropy anywhere.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t next_u64() { return kernels::u64_at(seed_, counter_++); }

  // Uniform in (0, 1); never exactly 0 or 1.
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Inclusive integer range.
  int64_t next_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next_u64() % span);
  }

  double next_exponential(double rate) {
    return -std::log(next_double()) / rate;
  }

  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692 * u2);
  }

  // Bulk N(0, sigma^2) via the dispatched kernel; advances the counter by
  // 2*ceil(n/2) regardless of variant.
  template <typename T>
  void fill_gaussian(T* out, size_t n, T sigma) {
    kernels::gaussian_fill(seed_, counter_, sigma, out, n);
    counter_ += 2 * ((n + 1) / 2);
  }

  // Derives an independent stream (restart seeds, data sampling, ...).
  CounterRng fork(uint64_t stream) const {
    return CounterRng(kernels::u64_at(seed_, 0x5EEDF00Dull + stream));
  }

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

// Glorot (Xavier) uniform initialization: i.i.d. U[-a, a] with
// a = sqrt(6 / (fan_in + fan_out)). For conv kernels the fans include the
// receptive field size.
template <typename T>
void glorot_uniform_init(T* out, size_t n, int fan_in, int fan_out,
                         CounterRng& rng) {
  double a = std::sqrt(6.0 / (static_cast<double>(fan_in) + fan_out));
  for (size_t i = 0; i < n; ++i)
    out[i] = static_cast<T>(rng.next_uniform(-a, a));
}

}  // namespace pianomt

#endif  // PIANOMT_RNG_H_
