// Copyright 2026 The weakgauss Authors
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

#ifndef _WEAKGAUSS_RNG_H
#define _WEAKGAUSS_RNG_H

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace weakgauss {

/// Identifier written next to published seeds. Bump the suffix whenever any
/// of the bit streams below change.
constexpr const char *RNG_VERSION = "xoshiro256pp-splitmix64-polar-v1";

/// SplitMix64 output function (Steele, Lea, Flood 2014). Stateless mixer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and an index path.
///
///     h = mix64(master ^ 0x6A09E667F3BCC909)
///     for i, c in enumerate(path): h = mix64(h ^ mix64(c + (i + 1) * 0x9E3779B97F4A7C15))
///
/// The derivation only depends on the indices, never on execution order, so
/// any sub-block of a sweep can be recomputed in isolation.
uint64_t derive_stream_seed(uint64_t master_seed, std::initializer_list<uint64_t> path);

/// xoshiro256++ (Blackman & Vigna) seeded through SplitMix64, with
/// Marsaglia polar normal deviates.
///
/// Normal deviates come in pairs; the spare one is cached, so the cache is
/// part of the generator state. Satisfies UniformRandomBitGenerator.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<uint64_t>::max();
    }

    result_type operator()() {
        return next_u64();
    }
    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }
    /// Standard normal deviate.
    double normal();

   private:
    static constexpr uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<uint64_t, 4> s_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace weakgauss

#endif
