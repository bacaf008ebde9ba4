// Copyright 2026 binsc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BINSC_RNG_HPP
#define BINSC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Deterministic sampling helpers. std::mt19937_64 output is pinned by the
// standard, but the std distributions are not, so every draw used in results
// goes through the functions below instead.

namespace binsc::rng {

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform_unit(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) via 64x32 multiply-shift. bound >= 1.
inline std::uint32_t uniform_below(Engine& eng, std::uint32_t bound) {
    const std::uint64_t x = eng() >> 32;
    return static_cast<std::uint32_t>((x * bound) >> 32);
}

/// Standard normal via Box-Muller; two engine draws per sample.
inline double normal(Engine& eng) {
    const double u1 = 1.0 - uniform_unit(eng);  // (0, 1]
    const double u2 = uniform_unit(eng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

/// splitmix64 step, used to derive independent sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + 0x9e3779b97f4a7c15ull * (index + 1);
    return splitmix64(state);
}

}  // namespace binsc::rng

#endif  // BINSC_RNG_HPP
