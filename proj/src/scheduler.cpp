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

#include "ofsel/scheduler.hpp"

#include "ofsel/kernels.hpp"
#include "ofsel/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ofsel {

std::vector<double> block_throughputs(std::span<const double> snr, const OfdmConfig& cfg) {
    if (snr.size() != cfg.n_sc) {
        throw std::invalid_argument("block_throughputs: SNR grid length must equal n_sc");
    }
    std::vector<double> cb(cfg.n_rb);
    kernels::active_kernels().block_capacity(snr.data(), cfg.n_sc, cfg.block_size, cb.data());
    return cb;
}

std::vector<FeedbackReport> make_reports(const std::vector<std::vector<double>>& c_grids,
                                         std::size_t n_fb) {
    if (n_fb == 0) {
        throw std::invalid_argument("make_reports: n_fb must be >= 1");
    }
    std::vector<FeedbackReport> reports(c_grids.size());
    std::vector<std::uint32_t> order;
    for (std::size_t k = 0; k < c_grids.size(); ++k) {
        const auto& grid = c_grids[k];
        order.resize(grid.size());
        for (std::uint32_t b = 0; b < order.size(); ++b) {
            order[b] = b;
        }
        const std::size_t take = std::min<std::size_t>(n_fb, grid.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                          order.end(), [&grid](std::uint32_t a, std::uint32_t b) {
                              if (grid[a] != grid[b]) {
                                  return grid[a] > grid[b];
                              }
                              return a < b;
                          });
        reports[k].user_id = static_cast<std::uint32_t>(k);
        reports[k].entries.clear();
        reports[k].entries.reserve(take);
        for (std::size_t i = 0; i < take; ++i) {
            reports[k].entries.emplace_back(order[i], grid[order[i]]);
        }
    }
    return reports;
}

SchedulerState::SchedulerState(std::size_t k_users, double t_c_, double initial_avg)
    : t_k(k_users, initial_avg), t_c(t_c_) {
    if (k_users == 0) {
        throw std::invalid_argument("SchedulerState: at least one user required");
    }
    if (!(t_c > 1.0)) {
        throw std::invalid_argument("SchedulerState: t_c must exceed 1");
    }
    if (!(initial_avg > 0.0)) {
        throw std::invalid_argument("SchedulerState: initial average must be positive");
    }
}

void SchedulerState::apply_update(std::size_t winner, double c) {
    const double decay = 1.0 - 1.0 / t_c;
    for (double& t : t_k) {
        t *= decay;
    }
    if (winner != npos) {
        t_k[winner] += c / t_c;
    }
}

SlotAssignment pf_schedule_slot(std::span<const FeedbackReport> reports, SchedulerState& state,
                                const OfdmConfig& cfg, OutagePolicy policy,
                                const std::vector<std::vector<double>>* full_c) {
    if (reports.empty()) {
        throw std::invalid_argument("pf_schedule_slot: empty user list");
    }
    if (policy == OutagePolicy::round_robin && full_c == nullptr) {
        throw std::invalid_argument("pf_schedule_slot: round_robin requires full CSI");
    }

    SlotAssignment slot;
    slot.blocks.assign(cfg.n_rb, {SlotAssignment::outage, 0.0});

    std::vector<char> taken(cfg.n_rb, 0);
    for (std::size_t step = 0; step < cfg.n_rb; ++step) {
        // argmax of C_{k,b}/T_k over reported pairs with a free block;
        // strict comparison keeps the lowest (user, block) on ties because
        // users ascend and each user's entries are ordered.
        double best_metric = -1.0;
        std::size_t best_user = SchedulerState::npos;
        std::uint32_t best_block = 0;
        double best_c = 0.0;
        for (const auto& report : reports) {
            const double inv_avg = 1.0 / state.t_k[report.user_id];
            for (const auto& [block, c] : report.entries) {
                if (taken[block]) {
                    continue;
                }
                const double metric = c * inv_avg;
                if (metric > best_metric) {
                    best_metric = metric;
                    best_user = report.user_id;
                    best_block = block;
                    best_c = c;
                }
            }
        }
        if (best_user == SchedulerState::npos) {
            break; // every reported block is assigned; the rest is outage
        }
        taken[best_block] = 1;
        slot.blocks[best_block] = {static_cast<std::int32_t>(best_user), best_c};
        slot.assigned_sum += best_c;
        ++slot.assigned_count;
        state.apply_update(best_user, best_c);
    }

    if (policy == OutagePolicy::round_robin) {
        for (std::uint32_t b = 0; b < cfg.n_rb; ++b) {
            if (taken[b]) {
                continue;
            }
            const std::size_t user = state.rr_cursor++ % reports.size();
            const double c = (*full_c)[user][b];
            taken[b] = 1;
            slot.blocks[b] = {static_cast<std::int32_t>(user), c};
            slot.assigned_sum += c;
            ++slot.assigned_count;
            state.apply_update(user, c);
        }
    }
    ++state.time_index;
    return slot;
}

ChannelSpec ChannelSpec::siso(PowerDelayProfile pdp) {
    ChannelSpec spec;
    spec.pdps.push_back(std::move(pdp));
    return spec;
}

ChannelSpec ChannelSpec::cdd_identical(PowerDelayProfile pdp, const CddConfig& cdd) {
    ChannelSpec spec;
    spec.pdps.assign(cdd.n_tx(), pdp);
    spec.cdd = cdd;
    return spec;
}

PowerDelayProfile ChannelSpec::effective_pdp(const OfdmConfig& cfg) const {
    if (pdps.empty()) {
        throw std::invalid_argument("ChannelSpec: no delay profile");
    }
    if (cdd) {
        return cdd_compose_pdp(pdps, *cdd, cfg);
    }
    if (pdps.size() != 1) {
        throw std::invalid_argument("ChannelSpec: multiple profiles need a CDD config");
    }
    return pdps[0];
}

namespace {

// Draws SNR grids / block throughputs from the effective profile without
// per-draw allocation. Only nonzero-gain taps consume randomness.
class ChannelSampler {
  public:
    ChannelSampler(const ChannelSpec& spec, const OfdmConfig& cfg)
        : cfg_(cfg), pdp_(spec.effective_pdp(cfg)) {
        const auto& gains = pdp_.gains();
        for (std::size_t m = 0; m < gains.size(); ++m) {
            if (gains[m] != 0.0) {
                gains_.push_back(gains[m]);
                delays_.push_back(static_cast<std::uint32_t>(m));
            }
        }
        use_fft_ = gains_.size() > 32;
        taps_.resize(gains_.size());
        freq_.resize(cfg.n_sc);
        snr_.resize(cfg.n_sc);
    }

    // fills cb (length n_rb); returns max_b C_b
    double draw(Prng& rng, std::vector<double>& cb) {
        const auto& k = kernels::active_kernels();
        std::fill(freq_.begin(), freq_.end(), std::complex<double>{0.0, 0.0});
        if (use_fft_) {
            for (std::size_t i = 0; i < gains_.size(); ++i) {
                freq_[delays_[i]] = gains_[i] * rng.complex_gaussian();
            }
            kernels::fft_inplace(freq_.data(), cfg_.n_sc);
        } else {
            for (std::size_t i = 0; i < gains_.size(); ++i) {
                taps_[i] = gains_[i] * rng.complex_gaussian();
            }
            k.dft_accumulate(taps_.data(), delays_.data(), taps_.size(), cfg_.n_sc, freq_.data(),
                             cfg_.n_sc);
        }
        k.snr_grid(freq_.data(), cfg_.n_sc, cfg_.snr_scale, snr_.data());
        cb.resize(cfg_.n_rb);
        k.block_capacity(snr_.data(), cfg_.n_sc, cfg_.block_size, cb.data());
        return *std::max_element(cb.begin(), cb.end());
    }

  private:
    OfdmConfig cfg_;
    PowerDelayProfile pdp_;
    std::vector<double> gains_;
    std::vector<std::uint32_t> delays_;
    std::vector<std::complex<double>> taps_;
    std::vector<std::complex<double>> freq_;
    std::vector<double> snr_;
    bool use_fft_ = false;
};

struct RunningStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double stderr_mean() const {
        if (n < 2) {
            return 0.0;
        }
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) /
                                             static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

} // namespace

CampaignStats run_campaign(const ChannelSpec& spec, const OfdmConfig& cfg,
                           const CampaignConfig& campaign) {
    if (campaign.k_users == 0) {
        throw std::invalid_argument("run_campaign: at least one user required");
    }
    const std::size_t warmup = static_cast<std::size_t>(campaign.t_c);
    if (campaign.n_slots <= warmup) {
        throw std::invalid_argument("run_campaign: n_slots must exceed the warm-up window t_c");
    }

    ChannelSampler sampler(spec, cfg);
    std::vector<Prng> user_rng;
    user_rng.reserve(campaign.k_users);
    for (std::size_t k = 0; k < campaign.k_users; ++k) {
        user_rng.emplace_back(derive_stream(campaign.seed, k));
    }

    SchedulerState state(campaign.k_users, campaign.t_c,
                         mean_cb(cfg.snr_scale) / static_cast<double>(campaign.k_users));

    std::vector<std::vector<double>> c_grids(campaign.k_users);
    std::vector<std::size_t> wins(campaign.k_users, 0);
    RunningStats rate_stats;  // per-slot mean achieved C over assigned blocks
    RunningStats max_stats;   // per-slot user-average of max_b C_b
    double total_c = 0.0;
    std::size_t total_assigned = 0;
    std::size_t total_outage = 0;
    std::size_t slots_measured = 0;

    for (std::size_t slot = 0; slot < campaign.n_slots; ++slot) {
        double max_cb_sum = 0.0;
        for (std::size_t k = 0; k < campaign.k_users; ++k) {
            max_cb_sum += sampler.draw(user_rng[k], c_grids[k]);
        }
        const auto reports = make_reports(c_grids, campaign.n_fb);
        const SlotAssignment assignment =
            pf_schedule_slot(reports, state, cfg, campaign.policy, &c_grids);

        if (slot < warmup) {
            continue;
        }
        ++slots_measured;
        total_c += assignment.assigned_sum;
        total_assigned += assignment.assigned_count;
        total_outage += cfg.n_rb - assignment.assigned_count;
        rate_stats.add(assignment.assigned_count
                           ? assignment.assigned_sum / static_cast<double>(assignment.assigned_count)
                           : 0.0);
        max_stats.add(max_cb_sum / static_cast<double>(campaign.k_users));
        for (const auto& entry : assignment.blocks) {
            if (entry.user != SlotAssignment::outage) {
                ++wins[static_cast<std::size_t>(entry.user)];
            }
        }
    }

    CampaignStats stats;
    stats.sum_rate = total_assigned ? total_c / static_cast<double>(total_assigned) : 0.0;
    stats.sum_rate_se = rate_stats.stderr_mean();
    stats.max_cb_mean = max_stats.mean();
    stats.max_cb_se = max_stats.stderr_mean();
    stats.win_share.resize(campaign.k_users);
    for (std::size_t k = 0; k < campaign.k_users; ++k) {
        stats.win_share[k] =
            total_assigned ? static_cast<double>(wins[k]) / static_cast<double>(total_assigned)
                           : 0.0;
    }
    stats.outage_fraction = static_cast<double>(total_outage) /
                            static_cast<double>(slots_measured * cfg.n_rb);
    stats.slots_measured = slots_measured;
    stats.seed = campaign.seed;
    return stats;
}

TrialStats empirical_max_cb(const ChannelSpec& spec, const OfdmConfig& cfg, std::size_t n_trials,
                            std::uint64_t seed) {
    if (n_trials == 0) {
        throw std::invalid_argument("empirical_max_cb: n_trials must be >= 1");
    }
    ChannelSampler sampler(spec, cfg);
    // fixed chunking keeps results independent of any future parallel split
    const std::size_t chunks = std::min<std::size_t>(64, n_trials);
    RunningStats stats;
    std::vector<double> cb;
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        const std::size_t count = n_trials / chunks + (chunk < n_trials % chunks ? 1 : 0);
        Prng rng(derive_stream(seed, chunk, 0x6d63)); // "mc" stream tag
        for (std::size_t i = 0; i < count; ++i) {
            stats.add(sampler.draw(rng, cb));
        }
    }
    return {stats.mean(), stats.stderr_mean(), stats.n};
}

} // namespace ofsel
