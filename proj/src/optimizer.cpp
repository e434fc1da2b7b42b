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

#include "ofsel/optimizer.hpp"

#include "ofsel/throughput.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofsel {

namespace {

struct DelayPoint {
    double s_sc_intra;
    double phi;
};

// intra-block sum and inter-block sum of the CDD-weighted correlation table
DelayPoint evaluate_delay(const RhoScTable& siso, const OfdmConfig& cfg, std::size_t n_tx,
                          std::uint32_t d) {
    std::vector<double> weighted(cfg.n_sc);
    const double step = -2.0 * std::numbers::pi * static_cast<double>(d) /
                        static_cast<double>(cfg.n_sc);
    for (std::size_t dn = 0; dn < cfg.n_sc; ++dn) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n_tx; ++i) {
            const double theta = step * static_cast<double>(dn) * static_cast<double>(i);
            acc += std::complex<double>{std::cos(theta), std::sin(theta)};
        }
        const double w = std::norm(acc / static_cast<double>(n_tx));
        weighted[dn] = siso[static_cast<long long>(dn)] * w;
    }

    // same pair-count evaluation as analytics::sum_sc, on the weighted table
    auto sum_block = [&](long long delta_b) {
        const auto s = static_cast<long long>(cfg.block_size);
        const long long base = delta_b * s;
        double acc = 0.0;
        for (long long off = -(s - 1); off <= s - 1; ++off) {
            long long idx = (base + off) % static_cast<long long>(cfg.n_sc);
            if (idx < 0) {
                idx += static_cast<long long>(cfg.n_sc);
            }
            acc += static_cast<double>(s - std::llabs(off)) * weighted[static_cast<std::size_t>(idx)];
        }
        return acc / (static_cast<double>(cfg.block_size) * static_cast<double>(cfg.block_size));
    };

    const double intra = sum_block(0);
    double phi = 0.0;
    for (std::size_t b = 0; b < cfg.n_rb; ++b) {
        phi += sum_block(static_cast<long long>(b)) / intra;
    }
    phi /= static_cast<double>(cfg.n_rb);
    return {intra, phi};
}

double objective_value(const CbMoments& moments, const DelayPoint& point,
                       DelayObjective objective) {
    if (objective == DelayObjective::gaussian) {
        return max_cb_gaussian(moments, point.s_sc_intra, point.phi);
    }
    CbMoments m = moments;
    m.var_fo = m.v1 * point.s_sc_intra;
    return max_cb_os_bound(m, point.phi);
}

} // namespace

DelayDecision search_delay(const PowerDelayProfile& pdp, const OfdmConfig& cfg, std::size_t n_tx,
                           DelayObjective objective) {
    if (n_tx < 1) {
        throw std::invalid_argument("search_delay: n_tx must be >= 1");
    }
    const RhoScTable siso(pdp, cfg.n_sc);
    const CbMoments moments = CbMoments::make(cfg.snr_scale, 1.0, 1.0);

    DelayDecision decision;
    decision.method = objective == DelayObjective::gaussian ? DelayMethod::gaussian_search
                                                            : DelayMethod::os_search;

    double best_value = -1.0;
    double peak_eff_blocks = 0.0;
    std::uint32_t peak_d = 0;
    double prev_eff_blocks = 0.0;
    double prev_intra = 0.0;
    int consecutive_drops = 0;

    const auto limit = static_cast<std::uint32_t>(cfg.n_sc - 1);
    for (std::uint32_t d = 0; d <= limit; ++d) {
        const DelayPoint point = evaluate_delay(siso, cfg, n_tx, d);
        const double value = objective_value(moments, point, objective);
        decision.objective_curve.emplace_back(d, value);
        if (value > best_value) {
            best_value = value;
            decision.d_star = d;
        }

        const double eff_blocks = 1.0 / point.phi;
        if (d == 0 || eff_blocks > peak_eff_blocks) {
            peak_eff_blocks = eff_blocks;
            peak_d = d;
        }
        if (d > 0 && eff_blocks < prev_eff_blocks && point.s_sc_intra < prev_intra) {
            ++consecutive_drops;
        } else if (d > 0) {
            consecutive_drops = 0;
        }
        prev_eff_blocks = eff_blocks;
        prev_intra = point.s_sc_intra;

        if (d > peak_d && consecutive_drops >= 3) {
            break; // past the effective-block peak with both factors shrinking
        }
    }
    decision.search_limit = decision.objective_curve.back().first;
    return decision;
}

std::vector<std::pair<std::uint32_t, double>> delay_objective_curve(const PowerDelayProfile& pdp,
                                                                    const OfdmConfig& cfg,
                                                                    std::size_t n_tx,
                                                                    DelayObjective objective) {
    return search_delay(pdp, cfg, n_tx, objective).objective_curve;
}

DelayDecision closed_form_delay(std::span<const DelaySpreadStats> stats, std::size_t block_size,
                                double k_c, double kappa, std::size_t n_tx) {
    if (stats.size() != n_tx) {
        throw std::invalid_argument("closed_form_delay: one stats entry per antenna required");
    }
    if (!(k_c > 0.0)) {
        throw std::invalid_argument("closed_form_delay: k_c must be positive");
    }
    if (!(kappa > 0.0) || !(kappa < 1.0)) {
        throw std::invalid_argument("closed_form_delay: kappa must lie in (0,1)");
    }

    DelayDecision decision;
    decision.method = DelayMethod::rms_closed_form;
    decision.kappa = kappa;
    decision.k_c = k_c;

    if (n_tx < 2) {
        decision.d_star = 0;
        decision.d_bc = 0;
        decision.d_max = 0;
        return decision;
    }

    double mu_mean = 0.0;
    double mu_weighted = 0.0;
    double mu_sq_mean = 0.0;
    double tau_sq_mean = 0.0;
    const double inv_tx = 1.0 / static_cast<double>(n_tx);
    for (std::size_t i = 0; i < stats.size(); ++i) {
        mu_mean += inv_tx * stats[i].mu;
        mu_weighted += inv_tx * static_cast<double>(i + 1) * stats[i].mu;
        mu_sq_mean += inv_tx * stats[i].mu * stats[i].mu;
        tau_sq_mean += inv_tx * stats[i].tau_rms * stats[i].tau_rms;
    }
    const double n = static_cast<double>(n_tx);
    const double a = (n * n - 1.0) / 12.0;
    const double b = 2.0 * mu_weighted - mu_mean * (n + 1.0);
    const double c = mu_sq_mean - mu_mean * mu_mean;

    const double s = static_cast<double>(block_size);
    const double radicand =
        1.0 / (k_c * k_c * s * s) - tau_sq_mean + (b * b - 4.0 * a * c) / (4.0 * a);
    const double root = std::sqrt(std::max(0.0, radicand));
    const double d_bc_real = root / std::sqrt(a) - b / (2.0 * a);
    decision.d_bc = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(d_bc_real)));

    // min over the first n_tx - 1 antennas
    std::int64_t d_max = tau_max(stats[0].tau_rms, kappa);
    for (std::size_t i = 1; i + 1 < stats.size(); ++i) {
        d_max = std::min<std::int64_t>(d_max, tau_max(stats[i].tau_rms, kappa));
    }
    decision.d_max = d_max;
    decision.d_star = static_cast<std::uint32_t>(std::min(decision.d_bc, decision.d_max));
    return decision;
}

double calibrate_k_c(std::span<const PowerDelayProfile> reference, const OfdmConfig& cfg,
                     std::size_t n_tx, double kappa) {
    if (reference.empty()) {
        throw std::invalid_argument("calibrate_k_c: reference set must not be empty");
    }
    std::vector<std::uint32_t> targets;
    std::vector<std::vector<DelaySpreadStats>> stats;
    targets.reserve(reference.size());
    for (const auto& pdp : reference) {
        targets.push_back(search_delay(pdp, cfg, n_tx, DelayObjective::gaussian).d_star);
        stats.emplace_back(n_tx, rms_delay(pdp, kappa));
    }

    const double center = default_k_c(cfg.n_sc);
    double best_kc = center;
    double best_err = -1.0;
    const int grid = 241;
    for (int i = 0; i < grid; ++i) {
        // k_c from center/16 to center*16, log spaced
        const double expo = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(grid - 1);
        const double k_c = center * std::pow(2.0, expo);
        double err = 0.0;
        for (std::size_t j = 0; j < reference.size(); ++j) {
            const auto d = closed_form_delay(stats[j], cfg.block_size, k_c, kappa, n_tx).d_star;
            const double diff = static_cast<double>(d) - static_cast<double>(targets[j]);
            err += diff * diff;
        }
        if (best_err < 0.0 || err < best_err ||
            (err == best_err && std::abs(std::log(k_c / center)) <
                                    std::abs(std::log(best_kc / center)))) {
            best_err = err;
            best_kc = k_c;
        }
    }
    return best_kc;
}

} // namespace ofsel
