// Copyright 2026 The ens-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENSLAB_RNG_H_
#define ENSLAB_RNG_H_

#include <cstdint>
#include <random>

#include "enslab/bytes.h"

namespace enslab {

// Single seeded randomness source per simulation. mt19937_64 output is
// fully specified by the standard, so traces are reproducible across
// platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextUint64() { return engine_(); }

  uint64_t NextBounded(uint64_t bound) {
    std::uniform_int_distribution<uint64_t> dist(0, bound - 1);
    return dist(engine_);
  }

  Bytes NextBytes(size_t n) {
    Bytes out(n);
    for (size_t i = 0; i < n; ++i) {
      out[i] = static_cast<uint8_t>(engine_() & 0xff);
    }
    return out;
  }

  template <size_t N>
  std::array<uint8_t, N> NextArray() {
    std::array<uint8_t, N> out;
    for (size_t i = 0; i < N; ++i) {
      out[i] = static_cast<uint8_t>(engine_() & 0xff);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace enslab

#endif  // ENSLAB_RNG_H_
