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

#ifndef OFSEL_CHANNEL_HPP
#define OFSEL_CHANNEL_HPP

#include "ofsel/prng.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ofsel {

// Tapped-delay-line power profile with one-sample tap spacing (tap m sits at
// delay m-1 samples). Gains are amplitudes alpha_m, normalized so that
// sum alpha_m^2 == 1; the profile fully determines the second-order frequency
// statistics of the channel.
class PowerDelayProfile {
  public:
    // Takes amplitude gains; rescales to unit total power. Throws
    // std::invalid_argument on empty input, negative entries or zero power.
    explicit PowerDelayProfile(std::vector<double> gains);

    const std::vector<double>& gains() const { return gains_; }
    std::size_t paths() const { return gains_.size(); }

    double total_power() const; // sum alpha^2, 1 up to rounding
    double sum_gain4() const;   // sum alpha^4

  private:
    std::vector<double> gains_;
};

// alpha_m proportional to exp(-m/tau_o), m = 1..L. L is the smaller of
// max_taps and the shortest length capturing >= 99.99% of the untruncated
// tail power; the result is renormalized to unit power.
PowerDelayProfile make_exponential_pdp(double tau_o, int max_taps);

struct OfdmConfig {
    // n_sc must be a power of two and a multiple of block_size; snr_scale is
    // the linear P/sigma_w^2 ratio.
    OfdmConfig(std::size_t n_sc, std::size_t block_size, double snr_scale);

    std::size_t n_sc;
    std::size_t block_size;
    std::size_t n_rb;
    double snr_scale;
};

// Per-antenna cyclic delays in samples. The first antenna is the reference
// and must have zero delay.
class CddConfig {
  public:
    explicit CddConfig(std::vector<std::uint32_t> delays);
    static CddConfig linear(std::size_t n_tx, std::uint32_t d); // D_i = (i-1) D

    std::size_t n_tx() const { return delays_.size(); }
    const std::vector<std::uint32_t>& delays() const { return delays_; }

  private:
    std::vector<std::uint32_t> delays_;
};

struct ChannelRealization {
    std::vector<std::complex<double>> taps; // alpha_m * h_m, delay = index
    std::uint64_t rng_seed;                 // seed of the generator that produced it
};

struct FrequencyResponse {
    std::vector<std::complex<double>> values; // H_n, n = 0..n_sc-1
};

// taps[m] = alpha_m * h_m with h_m i.i.d. CN(0,1); one draw per tap,
// including zero-gain taps, so consumption depends only on the profile length.
ChannelRealization sample_channel(const PowerDelayProfile& pdp, Prng& rng);

enum class DftRoute { automatic, direct, fft };

// H_n = sum_m taps[m] * exp(-j 2 pi m n / n_sc). The direct route skips
// zero taps; the fft route zero-pads to n_sc. Both agree to ~1e-12 and the
// automatic route picks by tap count.
FrequencyResponse freq_response(const ChannelRealization& ch, const OfdmConfig& cfg,
                                DftRoute route = DftRoute::automatic);

// gamma_n = snr_scale * |H_n|^2
std::vector<double> snr_grid(const FrequencyResponse& fr, const OfdmConfig& cfg);

// Equivalent single-channel profile of a CDD transmission: power at delay d
// is the antenna average of per-antenna powers cyclically shifted by D_i,
// wrapped modulo n_sc. Result is renormalized to unit power.
PowerDelayProfile cdd_compose_pdp(std::span<const PowerDelayProfile> pdps, const CddConfig& cdd,
                                  const OfdmConfig& cfg);

// H_n^cdd = (1/sqrt(n_tx)) sum_i H_{i,n} exp(-j 2 pi D_i n / n_sc)
FrequencyResponse cdd_freq_response(std::span<const FrequencyResponse> frs, const CddConfig& cdd,
                                    const OfdmConfig& cfg);

} // namespace ofsel

#endif
