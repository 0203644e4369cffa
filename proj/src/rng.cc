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

#include "weakgauss/rng.h"

#include <cmath>

using namespace weakgauss;

uint64_t weakgauss::derive_stream_seed(uint64_t master_seed, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
    uint64_t i = 0;
    for (uint64_t c : path) {
        ++i;
        h = mix64(h ^ mix64(c + i * 0x9E3779B97F4A7C15ULL));
    }
    return h;
}

Rng::Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto &word : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        word = mix64(x);
    }
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2 * uniform01() - 1;
        v = 2 * uniform01() - 1;
        s = u * u + v * v;
    } while (s >= 1 || s == 0);
    double f = std::sqrt(-2 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}
