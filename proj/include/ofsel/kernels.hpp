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

#ifndef OFSEL_KERNELS_HPP
#define OFSEL_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops of the simulator. Every kernel exists as a plain
// scalar reference and, on x86-64, as an AVX2/FMA variant selected at runtime.
// The variants are interchangeable: equivalence is asserted by the test suite
// to tight absolute/relative tolerances (they are not bit-identical because
// of FMA contraction and vector polynomial evaluation).

namespace ofsel::kernels {

struct KernelSet {
    const char* name;

    // out[n] += sum_m taps[m] * exp(-j 2*pi * delays[m] * n / period), n in [0, count).
    // Per-tap phase recurrence; |error| grows like count * eps per tap.
    void (*dft_accumulate)(const std::complex<double>* taps, const std::uint32_t* delays,
                           std::size_t n_taps, std::size_t period,
                           std::complex<double>* out, std::size_t count);

    // out[n] = scale * |h[n]|^2
    void (*snr_grid)(const std::complex<double>* h, std::size_t n, double scale, double* out);

    // out[b] = (1/block_size) * sum of log2(1 + snr[n]) over block b.
    // n_sc must be a multiple of block_size.
    void (*block_capacity)(const double* snr, std::size_t n_sc, std::size_t block_size,
                           double* out);
};

const KernelSet& scalar_kernels();

bool avx2_available();
// Valid only when avx2_available(); entries fall back to scalar otherwise.
const KernelSet& avx2_kernels();

// Runtime-selected set. Defaults to the best available; the OFSEL_KERNELS
// environment variable ("scalar", "avx2", "auto") or select_kernels()
// overrides it. Selection is process-global; set it before spawning workers.
const KernelSet& active_kernels();
bool select_kernels(std::string_view name);

// In-place radix-2 DIT FFT, forward sign convention X[k] = sum_n x[n] e^{-j2*pi*nk/N}.
// n must be a power of two.
void fft_inplace(std::complex<double>* data, std::size_t n);

} // namespace ofsel::kernels

#endif
