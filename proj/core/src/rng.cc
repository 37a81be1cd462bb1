// Copyright 2026 The Carpool Authors
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

#include "carpool/rng.h"

#include <algorithm>
#include <cmath>

namespace carpool {

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::UniformIndex(std::uint64_t n) {
  // 2^64 mod n; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = NextU64();
    if (r >= threshold) return r % n;
  }
}

std::uint64_t Rng::Poisson(double mean) {
  std::uint64_t total = 0;
  for (double remaining = mean; remaining > 0.0; remaining -= 16.0) {
    const double limit = std::exp(-std::min(remaining, 16.0));
    std::uint64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= Uniform();
    } while (product > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace carpool
