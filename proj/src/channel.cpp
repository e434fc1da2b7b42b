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

#include "ofsel/channel.hpp"

#include "ofsel/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofsel {

PowerDelayProfile::PowerDelayProfile(std::vector<double> gains) : gains_(std::move(gains)) {
    if (gains_.empty()) {
        throw std::invalid_argument("PowerDelayProfile: at least one tap required");
    }
    double power = 0.0;
    for (double g : gains_) {
        if (!(g >= 0.0)) {
            throw std::invalid_argument("PowerDelayProfile: gains must be nonnegative");
        }
        power += g * g;
    }
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw std::invalid_argument("PowerDelayProfile: total power must be positive and finite");
    }
    const double inv = 1.0 / std::sqrt(power);
    for (double& g : gains_) {
        g *= inv;
    }
}

double PowerDelayProfile::total_power() const {
    double p = 0.0;
    for (double g : gains_) {
        p += g * g;
    }
    return p;
}

double PowerDelayProfile::sum_gain4() const {
    double s = 0.0;
    for (double g : gains_) {
        const double p = g * g;
        s += p * p;
    }
    return s;
}

PowerDelayProfile make_exponential_pdp(double tau_o, int max_taps) {
    if (!(tau_o > 0.0)) {
        throw std::invalid_argument("make_exponential_pdp: tau_o must be positive");
    }
    if (max_taps < 1) {
        throw std::invalid_argument("make_exponential_pdp: max_taps must be >= 1");
    }
    // Tail power of the geometric series q^m drops below 1e-4 of the total
    // once L >= ln(1e-4)/ln(q), q = exp(-2/tau_o).
    const double log_q = -2.0 / tau_o;
    int length = max_taps;
    const double needed = std::log(1e-4) / log_q; // may overflow to inf for huge tau_o
    if (needed < static_cast<double>(max_taps)) {
        length = std::max(1, static_cast<int>(std::ceil(needed)));
    }
    std::vector<double> gains(static_cast<std::size_t>(length));
    for (int m = 1; m <= length; ++m) {
        gains[static_cast<std::size_t>(m - 1)] = std::exp(-static_cast<double>(m) / tau_o);
    }
    return PowerDelayProfile(std::move(gains)); // ctor normalizes
}

OfdmConfig::OfdmConfig(std::size_t n_sc_, std::size_t block_size_, double snr_scale_)
    : n_sc(n_sc_), block_size(block_size_), n_rb(0), snr_scale(snr_scale_) {
    if (n_sc == 0 || !std::has_single_bit(n_sc)) {
        throw std::invalid_argument("OfdmConfig: n_sc must be a power of two");
    }
    if (block_size == 0 || n_sc % block_size != 0) {
        throw std::invalid_argument("OfdmConfig: block_size must divide n_sc");
    }
    if (!(snr_scale > 0.0)) {
        throw std::invalid_argument("OfdmConfig: snr_scale must be positive");
    }
    n_rb = n_sc / block_size;
}

CddConfig::CddConfig(std::vector<std::uint32_t> delays) : delays_(std::move(delays)) {
    if (delays_.empty()) {
        throw std::invalid_argument("CddConfig: at least one antenna required");
    }
    if (delays_.front() != 0) {
        throw std::invalid_argument("CddConfig: reference antenna delay must be zero");
    }
}

CddConfig CddConfig::linear(std::size_t n_tx, std::uint32_t d) {
    if (n_tx == 0) {
        throw std::invalid_argument("CddConfig: at least one antenna required");
    }
    std::vector<std::uint32_t> delays(n_tx);
    for (std::size_t i = 0; i < n_tx; ++i) {
        delays[i] = static_cast<std::uint32_t>(i) * d;
    }
    return CddConfig(std::move(delays));
}

ChannelRealization sample_channel(const PowerDelayProfile& pdp, Prng& rng) {
    ChannelRealization ch;
    ch.rng_seed = rng.seed();
    ch.taps.resize(pdp.paths());
    for (std::size_t m = 0; m < pdp.paths(); ++m) {
        ch.taps[m] = pdp.gains()[m] * rng.complex_gaussian();
    }
    return ch;
}

FrequencyResponse freq_response(const ChannelRealization& ch, const OfdmConfig& cfg,
                                DftRoute route) {
    const std::size_t taps = ch.taps.size();
    if (taps > cfg.n_sc) {
        throw std::invalid_argument("freq_response: more taps than subcarriers");
    }
    FrequencyResponse fr;
    fr.values.assign(cfg.n_sc, {0.0, 0.0});

    if (route == DftRoute::automatic) {
        route = taps <= 32 ? DftRoute::direct : DftRoute::fft;
    }
    if (route == DftRoute::direct) {
        std::vector<std::complex<double>> nz;
        std::vector<std::uint32_t> delays;
        nz.reserve(taps);
        delays.reserve(taps);
        for (std::size_t m = 0; m < taps; ++m) {
            if (ch.taps[m] != std::complex<double>{0.0, 0.0}) {
                nz.push_back(ch.taps[m]);
                delays.push_back(static_cast<std::uint32_t>(m));
            }
        }
        kernels::active_kernels().dft_accumulate(nz.data(), delays.data(), nz.size(), cfg.n_sc,
                                                 fr.values.data(), cfg.n_sc);
    } else {
        std::copy(ch.taps.begin(), ch.taps.end(), fr.values.begin());
        kernels::fft_inplace(fr.values.data(), cfg.n_sc);
    }
    return fr;
}

std::vector<double> snr_grid(const FrequencyResponse& fr, const OfdmConfig& cfg) {
    std::vector<double> out(fr.values.size());
    kernels::active_kernels().snr_grid(fr.values.data(), fr.values.size(), cfg.snr_scale,
                                       out.data());
    return out;
}

PowerDelayProfile cdd_compose_pdp(std::span<const PowerDelayProfile> pdps, const CddConfig& cdd,
                                  const OfdmConfig& cfg) {
    if (pdps.size() != cdd.n_tx()) {
        throw std::invalid_argument("cdd_compose_pdp: one profile per antenna required");
    }
    std::vector<double> power(cfg.n_sc, 0.0);
    const double inv_tx = 1.0 / static_cast<double>(cdd.n_tx());
    for (std::size_t i = 0; i < pdps.size(); ++i) {
        const auto& gains = pdps[i].gains();
        if (gains.size() > cfg.n_sc) {
            throw std::invalid_argument("cdd_compose_pdp: profile longer than n_sc");
        }
        const std::size_t shift = cdd.delays()[i] % cfg.n_sc;
        for (std::size_t m = 0; m < gains.size(); ++m) {
            const std::size_t d = (m + shift) % cfg.n_sc;
            power[d] += inv_tx * gains[m] * gains[m];
        }
    }
    std::size_t last = cfg.n_sc;
    while (last > 1 && power[last - 1] == 0.0) {
        --last;
    }
    power.resize(last);
    for (double& p : power) {
        p = std::sqrt(p);
    }
    return PowerDelayProfile(std::move(power));
}

FrequencyResponse cdd_freq_response(std::span<const FrequencyResponse> frs, const CddConfig& cdd,
                                    const OfdmConfig& cfg) {
    if (frs.size() != cdd.n_tx()) {
        throw std::invalid_argument("cdd_freq_response: one response per antenna required");
    }
    FrequencyResponse out;
    out.values.assign(cfg.n_sc, {0.0, 0.0});
    const double norm = 1.0 / std::sqrt(static_cast<double>(cdd.n_tx()));
    for (std::size_t i = 0; i < frs.size(); ++i) {
        if (frs[i].values.size() != cfg.n_sc) {
            throw std::invalid_argument("cdd_freq_response: response length mismatch");
        }
        const double theta = -2.0 * std::numbers::pi * static_cast<double>(cdd.delays()[i]) /
                             static_cast<double>(cfg.n_sc);
        const std::complex<double> w{std::cos(theta), std::sin(theta)};
        std::complex<double> phase{1.0, 0.0};
        for (std::size_t n = 0; n < cfg.n_sc; ++n) {
            out.values[n] += norm * frs[i].values[n] * phase;
            phase *= w;
        }
    }
    return out;
}

} // namespace ofsel
