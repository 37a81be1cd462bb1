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

// Portable random streams for instance generation.
//
// Engines are std::mt19937_64, whose output sequence is fixed by the C++
// standard. Each logical stream is seeded with SplitMix64(seed, stream id),
// and all derived variates are computed here rather than with the
// implementation-defined <random> distributions, so a seed produces the
// same instance on every conforming platform.

#ifndef CARPOOL_RNG_H_
#define CARPOOL_RNG_H_

#include <cstdint>
#include <random>

namespace carpool {

// SplitMix64 finalizer applied to seed + stream * golden-ratio increment.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(DeriveSeed(seed, stream)) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in [0, n), n >= 1, by rejection (no modulo bias).
  std::uint64_t UniformIndex(std::uint64_t n);
  // Poisson(mean) by Knuth's product method, split into chunks of mean at
  // most 16 so exp(-chunk) never underflows.
  std::uint64_t Poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace carpool

#endif  // CARPOOL_RNG_H_
