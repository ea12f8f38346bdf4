// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace noma {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++; satisfies UniformRandomBitGenerator.
class Xoshiro256 {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Independent stream for one Monte-Carlo sample. Depends only on the base
// seed and the sample index, never on how samples are split across threads.
inline Xoshiro256 sample_stream(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t mix = base_seed ^ 0x6A09E667F3BCC909ULL;
    const std::uint64_t a = splitmix64(mix);
    std::uint64_t key = a + index * 0xD1B54A32D192ED03ULL;
    return Xoshiro256(splitmix64(key));
}

// Uniform on (0, 1].
template <class Rng>
double uniform_open0(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Pair of independent standard normals (Box-Muller).
template <class Rng>
void normal_pair(Rng& rng, double& z0, double& z1) {
    const double u1 = uniform_open0(rng);
    const double u2 = uniform_open0(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(phi);
    z1 = r * std::sin(phi);
}

} // namespace noma
