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

#ifndef OFSEL_SCHEDULER_HPP
#define OFSEL_SCHEDULER_HPP

#include "ofsel/channel.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Monte-Carlo ground truth: block throughputs, best-N feedback, sequential
// proportional-fair block assignment with EWMA throughput tracking, and
// campaign-level sum-rate / max-throughput estimation. Channel draws are
// i.i.d. across slots (block fading, fresh fade per scheduling instant).

namespace ofsel {

// C_b = (1/S) sum over block b of log2(1 + gamma_n)
std::vector<double> block_throughputs(std::span<const double> snr, const OfdmConfig& cfg);

// Ordered best-N feedback of one user: entries sorted by descending C_b,
// ties broken toward the lower block index.
struct FeedbackReport {
    std::uint32_t user_id;
    std::vector<std::pair<std::uint32_t, double>> entries; // (block, C_b)
};

std::vector<FeedbackReport> make_reports(const std::vector<std::vector<double>>& c_grids,
                                         std::size_t n_fb);

struct SchedulerState {
    // initial_avg seeds every per-user average strictly positive so the PF
    // metric is defined from the first slot.
    SchedulerState(std::size_t k_users, double t_c, double initial_avg);

    // EWMA step applied after one assignment: every average decays by
    // (1 - 1/t_c); the winner additionally gains c/t_c. `winner` == npos
    // applies pure decay (used by tests; the scheduler itself never decays
    // without an assignment).
    void apply_update(std::size_t winner, double c);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<double> t_k; // per-user average throughput
    double t_c;              // scheduling window length
    std::uint64_t time_index = 0;
    std::size_t rr_cursor = 0; // rotates over users for outage round-robin
};

enum class OutagePolicy { skip, round_robin };

struct SlotAssignment {
    static constexpr std::int32_t outage = -1;
    struct Entry {
        std::int32_t user; // winning user, or `outage`
        double c;          // achieved block throughput (0 when outage)
    };
    std::vector<Entry> blocks;
    double assigned_sum = 0.0;       // sum of achieved C over assigned blocks
    std::size_t assigned_count = 0;
};

// One scheduling slot: N_RB sequential assignments maximizing C_{k,b}/T_k
// over the reported pairs, EWMA update after every assignment. Blocks no
// user reported are left unassigned (skip) or handed to the next user in
// rotation at that user's true rate (round_robin; requires full_c).
SlotAssignment pf_schedule_slot(std::span<const FeedbackReport> reports, SchedulerState& state,
                                const OfdmConfig& cfg, OutagePolicy policy,
                                const std::vector<std::vector<double>>* full_c = nullptr);

// SISO channel (one profile, no delays) or a CDD transmission. For draws the
// CDD case uses the composed profile, which has exactly the distribution of
// the superposed per-antenna responses.
struct ChannelSpec {
    std::vector<PowerDelayProfile> pdps;
    std::optional<CddConfig> cdd;

    static ChannelSpec siso(PowerDelayProfile pdp);
    static ChannelSpec cdd_identical(PowerDelayProfile pdp, const CddConfig& cdd);
    PowerDelayProfile effective_pdp(const OfdmConfig& cfg) const;
};

struct CampaignConfig {
    std::size_t k_users = 32;
    std::size_t n_fb = 1;
    double t_c = 100.0;
    std::size_t n_slots = 2000; // total; the first floor(t_c) slots are warm-up
    std::uint64_t seed = 1;
    OutagePolicy policy = OutagePolicy::skip;
};

struct CampaignStats {
    double sum_rate;    // mean achieved C over assigned blocks, bits/s/Hz
    double sum_rate_se; // standard error over slots
    double max_cb_mean; // E[max_b C_b] from the raw grids, feedback-independent
    double max_cb_se;
    std::vector<double> win_share; // per-user share of assigned blocks
    double outage_fraction;        // unassigned block-slots / total block-slots
    std::size_t slots_measured;
    std::uint64_t seed;
};

CampaignStats run_campaign(const ChannelSpec& spec, const OfdmConfig& cfg,
                           const CampaignConfig& campaign);

struct TrialStats {
    double mean;
    double se;
    std::size_t n;
};

// Mean over independent draws of max_b C_b for a single user.
TrialStats empirical_max_cb(const ChannelSpec& spec, const OfdmConfig& cfg, std::size_t n_trials,
                            std::uint64_t seed);

} // namespace ofsel

#endif
