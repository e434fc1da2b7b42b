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

#include "ofsel/kernels.hpp"

#include <cmath>
#include <numbers>

namespace ofsel::kernels {

namespace {

void dft_accumulate_scalar(const std::complex<double>* taps, const std::uint32_t* delays,
                           std::size_t n_taps, std::size_t period,
                           std::complex<double>* out, std::size_t count) {
    for (std::size_t m = 0; m < n_taps; ++m) {
        const double theta =
            -2.0 * std::numbers::pi * static_cast<double>(delays[m]) / static_cast<double>(period);
        const std::complex<double> w{std::cos(theta), std::sin(theta)};
        std::complex<double> cur = taps[m];
        for (std::size_t n = 0; n < count; ++n) {
            out[n] += cur;
            cur *= w;
        }
    }
}

void snr_grid_scalar(const std::complex<double>* h, std::size_t n, double scale, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = scale * std::norm(h[i]);
    }
}

void block_capacity_scalar(const double* snr, std::size_t n_sc, std::size_t block_size,
                           double* out) {
    const std::size_t n_rb = n_sc / block_size;
    const double inv_s = 1.0 / static_cast<double>(block_size);
    for (std::size_t b = 0; b < n_rb; ++b) {
        double acc = 0.0;
        const double* p = snr + b * block_size;
        for (std::size_t i = 0; i < block_size; ++i) {
            acc += std::log2(1.0 + p[i]);
        }
        out[b] = acc * inv_s;
    }
}

} // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", dft_accumulate_scalar, snr_grid_scalar,
                               block_capacity_scalar};
    return set;
}

void fft_inplace(std::complex<double>* data, std::size_t n) {
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double theta = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen{std::cos(theta), std::sin(theta)};
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

} // namespace ofsel::kernels
