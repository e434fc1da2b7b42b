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

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <immintrin.h>
#include <numbers>

namespace ofsel::kernels {

namespace {

// product of packed complex [a0, a1] with a broadcast complex (br, bi)
inline __m256d cmul_broadcast(__m256d a, __m256d br, __m256d bi) {
    const __m256d t1 = _mm256_mul_pd(a, br);
    const __m256d swapped = _mm256_permute_pd(a, 0b0101);
    const __m256d t2 = _mm256_mul_pd(swapped, bi);
    return _mm256_addsub_pd(t1, t2);
}

void dft_accumulate_avx2(const std::complex<double>* taps, const std::uint32_t* delays,
                         std::size_t n_taps, std::size_t period,
                         std::complex<double>* out, std::size_t count) {
    double* raw = reinterpret_cast<double*>(out);
    for (std::size_t m = 0; m < n_taps; ++m) {
        const double theta =
            -2.0 * std::numbers::pi * static_cast<double>(delays[m]) / static_cast<double>(period);
        const std::complex<double> w{std::cos(theta), std::sin(theta)};
        const std::complex<double> w2 = w * w;
        const std::complex<double> w4 = w2 * w2;
        const std::complex<double> c0 = taps[m];
        const std::complex<double> c1 = c0 * w;
        const std::complex<double> c2 = c0 * w2;
        const std::complex<double> c3 = c2 * w;

        __m256d cur0 = _mm256_setr_pd(c0.real(), c0.imag(), c1.real(), c1.imag());
        __m256d cur1 = _mm256_setr_pd(c2.real(), c2.imag(), c3.real(), c3.imag());
        const __m256d w4r = _mm256_set1_pd(w4.real());
        const __m256d w4i = _mm256_set1_pd(w4.imag());

        std::size_t n = 0;
        for (; n + 4 <= count; n += 4) {
            const __m256d o0 = _mm256_loadu_pd(raw + 2 * n);
            const __m256d o1 = _mm256_loadu_pd(raw + 2 * n + 4);
            _mm256_storeu_pd(raw + 2 * n, _mm256_add_pd(o0, cur0));
            _mm256_storeu_pd(raw + 2 * n + 4, _mm256_add_pd(o1, cur1));
            cur0 = cmul_broadcast(cur0, w4r, w4i);
            cur1 = cmul_broadcast(cur1, w4r, w4i);
        }
        if (n < count) {
            alignas(32) double buf[4];
            _mm256_store_pd(buf, cur0);
            std::complex<double> cur{buf[0], buf[1]};
            for (; n < count; ++n) {
                out[n] += cur;
                cur *= w;
            }
        }
    }
}

void snr_grid_avx2(const std::complex<double>* h, std::size_t n, double scale, double* out) {
    const double* raw = reinterpret_cast<const double*>(h);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(raw + 2 * i);     // r0 i0 r1 i1
        const __m256d b = _mm256_loadu_pd(raw + 2 * i + 4); // r2 i2 r3 i3
        const __m256d sa = _mm256_mul_pd(a, a);
        const __m256d sb = _mm256_mul_pd(b, b);
        // hadd yields |h0| |h2| |h1| |h3|; restore order
        const __m256d s = _mm256_hadd_pd(sa, sb);
        const __m256d norm = _mm256_permute4x64_pd(s, 0b11011000);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(norm, vscale));
    }
    for (; i < n; ++i) {
        out[i] = scale * std::norm(h[i]);
    }
}

// log2(1+x) for x >= 0: exponent/mantissa split, fold mantissa into
// [1/sqrt2, sqrt2), then atanh series of t = (m-1)/(m+1). Truncation error
// is below 2e-14 absolute, checked against std::log2 in the kernel tests.
inline __m256d log2_1p_nonneg(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d y = _mm256_add_pd(one, x);

    const __m256i bits = _mm256_castpd_si256(y);
    __m256i eint = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);

    // e (integer in [0, 1024]) to double via the 2^52 bias trick
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(eint, magic)),
                              _mm256_set1_pd(4503599627370496.0));
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d u = _mm256_mul_pd(t, t);

    __m256d p = _mm256_set1_pd(1.0 / 15.0);
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, u, one);

    const __m256d two_over_ln2 = _mm256_set1_pd(2.8853900817779268); // 2/ln(2)
    return _mm256_fmadd_pd(_mm256_mul_pd(t, p), two_over_ln2, e);
}

void block_capacity_avx2(const double* snr, std::size_t n_sc, std::size_t block_size,
                         double* out) {
    const std::size_t n_rb = n_sc / block_size;
    const double inv_s = 1.0 / static_cast<double>(block_size);
    for (std::size_t b = 0; b < n_rb; ++b) {
        const double* p = snr + b * block_size;
        __m256d vacc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= block_size; i += 4) {
            vacc = _mm256_add_pd(vacc, log2_1p_nonneg(_mm256_loadu_pd(p + i)));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vacc);
        double acc = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
        for (; i < block_size; ++i) {
            acc += std::log2(1.0 + p[i]);
        }
        out[b] = acc * inv_s;
    }
}

} // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelSet& avx2_kernels() {
    static const KernelSet set{"avx2", dft_accumulate_avx2, snr_grid_avx2, block_capacity_avx2};
    return set;
}

} // namespace ofsel::kernels

#else // non-x86: AVX2 set degrades to the scalar reference

namespace ofsel::kernels {

bool avx2_available() { return false; }

const KernelSet& avx2_kernels() { return scalar_kernels(); }

} // namespace ofsel::kernels

#endif
