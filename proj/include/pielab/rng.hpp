// Copyright 2026 The pie-lab Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace pielab {

/// Stream seed for task `index` of a run seeded with `master`. Streams for
/// different (master, index) pairs are decorrelated by two splitmix64 rounds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// mt19937_64 with a platform-independent double conversion (top 53 bits),
/// so seeded runs reproduce bit-for-bit across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }
    /// Standard normal via Box-Muller (one value per call).
    double normal();

  private:
    std::mt19937_64 engine_;
};

}  // namespace pielab
