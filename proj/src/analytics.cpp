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

#include "ofsel/analytics.hpp"

#include "ofsel/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ofsel {

namespace {

long long reduce_mod(long long x, std::size_t n) {
    const auto period = static_cast<long long>(n);
    long long r = x % period;
    if (r < 0) {
        r += period;
    }
    return r;
}

std::complex<double> weight_sum(const CddConfig& cdd, long long delta_n, std::size_t n_sc) {
    const double base = -2.0 * std::numbers::pi * static_cast<double>(reduce_mod(delta_n, n_sc)) /
                        static_cast<double>(n_sc);
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t d : cdd.delays()) {
        const double theta = base * static_cast<double>(d % n_sc);
        acc += std::complex<double>{std::cos(theta), std::sin(theta)};
    }
    return acc / static_cast<double>(cdd.n_tx());
}

} // namespace

std::complex<double> cov_h(const PowerDelayProfile& pdp, long long delta_n, std::size_t n_sc) {
    const double base = -2.0 * std::numbers::pi * static_cast<double>(reduce_mod(delta_n, n_sc)) /
                        static_cast<double>(n_sc);
    std::complex<double> acc{0.0, 0.0};
    const auto& gains = pdp.gains();
    for (std::size_t m = 0; m < gains.size(); ++m) {
        const double p = gains[m] * gains[m];
        if (p == 0.0) {
            continue;
        }
        const double theta = base * static_cast<double>(m);
        acc += p * std::complex<double>{std::cos(theta), std::sin(theta)};
    }
    return acc;
}

double rho_sc(const PowerDelayProfile& pdp, long long delta_n, std::size_t n_sc) {
    return std::norm(cov_h(pdp, delta_n, n_sc));
}

double cdd_weight(const CddConfig& cdd, long long delta_n, std::size_t n_sc) {
    return std::norm(weight_sum(cdd, delta_n, n_sc));
}

double rho_sc_cdd(const PowerDelayProfile& pdp, const CddConfig& cdd, long long delta_n,
                  std::size_t n_sc) {
    return rho_sc(pdp, delta_n, n_sc) * cdd_weight(cdd, delta_n, n_sc);
}

double rho_sc_cdd(std::span<const PowerDelayProfile> pdps, const CddConfig& cdd,
                  long long delta_n, std::size_t n_sc) {
    if (pdps.size() != cdd.n_tx()) {
        throw std::invalid_argument("rho_sc_cdd: one profile per antenna required");
    }
    for (std::size_t i = 1; i < pdps.size(); ++i) {
        if (pdps[i].gains() != pdps[0].gains()) {
            throw std::invalid_argument(
                "rho_sc_cdd: profiles differ across antennas; use cdd_compose_pdp + rho_sc");
        }
    }
    return rho_sc_cdd(pdps[0], cdd, delta_n, n_sc);
}

RhoScTable::RhoScTable(const PowerDelayProfile& pdp, std::size_t n_sc) {
    if (pdp.paths() > n_sc) {
        throw std::invalid_argument("RhoScTable: more taps than subcarriers");
    }
    // |DFT of the tap powers|^2 over the full grid
    std::vector<std::complex<double>> cov(n_sc, {0.0, 0.0});
    std::vector<std::complex<double>> taps;
    std::vector<std::uint32_t> delays;
    const auto& gains = pdp.gains();
    taps.reserve(gains.size());
    delays.reserve(gains.size());
    for (std::size_t m = 0; m < gains.size(); ++m) {
        const double p = gains[m] * gains[m];
        if (p != 0.0) {
            taps.push_back({p, 0.0});
            delays.push_back(static_cast<std::uint32_t>(m));
        }
    }
    kernels::active_kernels().dft_accumulate(taps.data(), delays.data(), taps.size(), n_sc,
                                             cov.data(), n_sc);
    values_.resize(n_sc);
    for (std::size_t i = 0; i < n_sc; ++i) {
        values_[i] = std::norm(cov[i]);
    }
    values_[0] = 1.0; // exact by normalization
}

RhoScTable::RhoScTable(const PowerDelayProfile& pdp, const CddConfig& cdd, std::size_t n_sc)
    : RhoScTable(pdp, n_sc) {
    for (std::size_t dn = 0; dn < n_sc; ++dn) {
        values_[dn] *= std::norm(weight_sum(cdd, static_cast<long long>(dn), n_sc));
    }
}

double sum_sc(const RhoScTable& rho, int r, long long delta_b, std::size_t block_size) {
    if (r != 1 && r != 2) {
        throw std::invalid_argument("sum_sc: order r must be 1 or 2");
    }
    const auto s = static_cast<long long>(block_size);
    const long long base = delta_b * s;
    // offsets n2-n1 in (-S, S) appear S-|offset| times each
    double acc = 0.0;
    for (long long off = -(s - 1); off <= s - 1; ++off) {
        const double count = static_cast<double>(s - std::llabs(off));
        const double v = rho[base + off];
        acc += count * (r == 1 ? v : v * v);
    }
    return acc / (static_cast<double>(block_size) * static_cast<double>(block_size));
}

double sum_sc(const PowerDelayProfile& pdp, int r, long long delta_b, std::size_t block_size,
              std::size_t n_sc) {
    return sum_sc(RhoScTable(pdp, n_sc), r, delta_b, block_size);
}

double selectivity_measure(const PowerDelayProfile& pdp, std::size_t n_sc) {
    if (pdp.paths() > n_sc) {
        throw std::invalid_argument("selectivity_measure: more taps than subcarriers");
    }
    return 1.0 / pdp.sum_gain4();
}

double rho_rb(const RhoScTable& rho, long long delta_b, std::size_t block_size) {
    return sum_sc(rho, 1, delta_b, block_size) / sum_sc(rho, 1, 0, block_size);
}

double rho_rb(const PowerDelayProfile& pdp, long long delta_b, std::size_t block_size,
              std::size_t n_sc) {
    const RhoScTable table(pdp, n_sc);
    return rho_rb(table, delta_b, block_size);
}

double inter_block_sum(const RhoScTable& rho, std::size_t block_size) {
    const std::size_t n_rb = rho.period() / block_size;
    const double intra = sum_sc(rho, 1, 0, block_size);
    double acc = 0.0;
    for (std::size_t b = 0; b < n_rb; ++b) {
        acc += sum_sc(rho, 1, static_cast<long long>(b), block_size) / intra;
    }
    return acc / static_cast<double>(n_rb);
}

double inter_block_sum(const PowerDelayProfile& pdp, std::size_t block_size, std::size_t n_sc) {
    return inter_block_sum(RhoScTable(pdp, n_sc), block_size);
}

double inter_block_sum_from(std::span<const double> rho_rb_values) {
    if (rho_rb_values.empty()) {
        throw std::invalid_argument("inter_block_sum_from: empty rho_RB sequence");
    }
    double acc = 0.0;
    for (double v : rho_rb_values) {
        acc += v;
    }
    return acc / static_cast<double>(rho_rb_values.size());
}

double effective_paths_cdd(const PowerDelayProfile& pdp, std::uint32_t d) {
    const auto& gains = pdp.gains();
    const std::size_t length = gains.size();
    double overlap = 0.0;
    if (d < length) {
        for (std::size_t m = d; m < length; ++m) {
            overlap += gains[m] * gains[m] * gains[m - d] * gains[m - d];
        }
    }
    return 2.0 / (pdp.sum_gain4() + overlap);
}

DelaySpreadStats rms_delay(const PowerDelayProfile& pdp, double kappa) {
    double mu = 0.0;
    double second = 0.0;
    const auto& gains = pdp.gains();
    for (std::size_t m = 0; m < gains.size(); ++m) {
        const double p = gains[m] * gains[m];
        const double delay = static_cast<double>(m);
        mu += delay * p;
        second += delay * delay * p;
    }
    const double var = std::max(0.0, second - mu * mu);
    const double tau = std::sqrt(var);
    return {mu, tau, tau_max(tau, kappa), kappa};
}

double cdd_rms_delay(std::span<const DelaySpreadStats> stats, const CddConfig& cdd) {
    if (stats.size() != cdd.n_tx()) {
        throw std::invalid_argument("cdd_rms_delay: one stats entry per antenna required");
    }
    const double inv_tx = 1.0 / static_cast<double>(cdd.n_tx());
    double mean_sq = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        const double shifted = stats[i].mu + static_cast<double>(cdd.delays()[i]);
        mean_sq += inv_tx * (stats[i].tau_rms * stats[i].tau_rms + shifted * shifted);
        mean += inv_tx * shifted;
    }
    return std::sqrt(std::max(0.0, mean_sq - mean * mean));
}

double cdd_rms_delay_linear(std::span<const DelaySpreadStats> stats, double d) {
    const auto n_tx = static_cast<double>(stats.size());
    if (stats.empty()) {
        throw std::invalid_argument("cdd_rms_delay_linear: empty stats");
    }
    double mu_mean = 0.0;       // mean of mu_i
    double mu_weighted = 0.0;   // mean of i * mu_i, i = 1..n_tx
    double mu_sq_mean = 0.0;    // mean of mu_i^2
    double tau_sq_mean = 0.0;   // mean of tau_i^2
    for (std::size_t i = 0; i < stats.size(); ++i) {
        mu_mean += stats[i].mu;
        mu_weighted += static_cast<double>(i + 1) * stats[i].mu;
        mu_sq_mean += stats[i].mu * stats[i].mu;
        tau_sq_mean += stats[i].tau_rms * stats[i].tau_rms;
    }
    mu_mean /= n_tx;
    mu_weighted /= n_tx;
    mu_sq_mean /= n_tx;
    tau_sq_mean /= n_tx;

    const double a = (n_tx * n_tx - 1.0) / 12.0;
    const double b = 2.0 * mu_weighted - mu_mean * (n_tx + 1.0);
    const double c = mu_sq_mean - mu_mean * mu_mean;
    return std::sqrt(std::max(0.0, a * d * d + b * d + c + tau_sq_mean));
}

double coherence_bandwidth(double tau_rms, double k_c) {
    if (!(k_c > 0.0)) {
        throw std::invalid_argument("coherence_bandwidth: k_c must be positive");
    }
    if (tau_rms == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (k_c * tau_rms);
}

double default_k_c(std::size_t n_sc) {
    return 2.0 * std::numbers::pi / static_cast<double>(n_sc);
}

int tau_max(double tau_rms, double kappa) {
    if (!(kappa > 0.0) || !(kappa < 1.0)) {
        throw std::invalid_argument("tau_max: kappa must lie in (0,1)");
    }
    return static_cast<int>(std::ceil(2.0 * tau_rms / std::sqrt(1.0 - kappa))) + 1;
}

namespace {

CorrelationSummary summarize_table(RhoScTable table, const OfdmConfig& cfg) {
    CorrelationSummary s;
    s.rho_sc.assign(table.values().begin(), table.values().end());
    s.s_sc_intra = sum_sc(table, 1, 0, cfg.block_size);
    s.phi = inter_block_sum(table, cfg.block_size);
    s.eff_paths = 1.0 / sum_sc(table, 1, 0, cfg.n_sc);
    s.eff_blocks = 1.0 / s.phi;
    s.rho_rb.resize(cfg.n_rb);
    for (std::size_t b = 0; b < cfg.n_rb; ++b) {
        s.rho_rb[b] = rho_rb(table, static_cast<long long>(b), cfg.block_size);
    }
    return s;
}

} // namespace

CorrelationSummary summarize(const PowerDelayProfile& pdp, const OfdmConfig& cfg) {
    return summarize_table(RhoScTable(pdp, cfg.n_sc), cfg);
}

CorrelationSummary summarize(const PowerDelayProfile& pdp, const OfdmConfig& cfg,
                             const CddConfig& cdd) {
    CorrelationSummary s = summarize_table(RhoScTable(pdp, cdd, cfg.n_sc), cfg);
    s.cdd_delays = cdd.delays();
    return s;
}

PowerDelayProfile exponential_pdp_for_effective_paths(double target, int max_taps) {
    if (!(target >= 1.0) || target >= static_cast<double>(max_taps)) {
        throw std::invalid_argument(
            "exponential_pdp_for_effective_paths: target must lie in [1, max_taps)");
    }
    if (target == 1.0) {
        return PowerDelayProfile({1.0});
    }
    // effective paths grow monotonically with tau_o
    double lo = 1e-3;
    double hi = 1e9;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double eff = effective_paths(make_exponential_pdp(mid, max_taps));
        if (eff < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return make_exponential_pdp(std::sqrt(lo * hi), max_taps);
}

} // namespace ofsel
