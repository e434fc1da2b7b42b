// SPDX-License-Identifier: Apache-2.0
//
// ofsel — frequency-selectivity analytics and scheduling simulation for OFDMA
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

#ifndef OFSEL_PRNG_HPP
#define OFSEL_PRNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace ofsel {

// splitmix64 step (Vigna). Used to expand / mix seeds, never as the
// simulation generator itself.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-stream seed for worker/user/chunk `id` (and optional
// second coordinate) of a top-level seed.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t id, std::uint64_t id2 = 0) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (id + 1);
    (void)splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (id2 + 1);
    return splitmix64(s);
}

// Seedable generator for all Monte-Carlo draws.
//
// Engine: std::mt19937_64 seeded through splitmix64 so that nearby seeds give
// unrelated streams. Complex Gaussians use the Box-Muller transform on raw
// 53-bit uniforms; no std::distribution is involved, so sequences are
// bit-identical across standard library implementations.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        eng_.seed(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // CN(0,1): real and imaginary parts are independent N(0, 1/2).
    // h = sqrt(-ln u1) * exp(j 2*pi*u2), u1 in (0,1].
    std::complex<double> complex_gaussian() {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace ofsel

#endif
