// Copyright 2026 The semiq Authors
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

namespace semiq {

/// SplitMix64 finalizer. Used to turn (seed, stream) pairs into well-mixed
/// engine seeds; neighbouring inputs give unrelated outputs.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic substream seed. `derive_seed(master, i)` is what the Monte
/// Carlo driver uses for trial i, and what a session uses for each party.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Seeded randomness for everything stochastic in a session: Born-rule
/// sampling, key generation, position choices and permutations.
///
/// mt19937_64 output is fixed by the standard and the conversions below are
/// done by hand (not via std::*_distribution), so streams are bit-identical
/// across compilers and platforms.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed), seed_(seed) {
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }

    /// Independent child stream, e.g. one per party.
    RandomSource fork(std::uint64_t stream) const {
        return RandomSource(derive_seed(seed_, stream));
    }

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    std::uint8_t bit() {
        return static_cast<std::uint8_t>(engine_() >> 63);
    }

   private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace semiq
