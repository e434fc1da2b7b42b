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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ofsel/scheduler.hpp"
#include "ofsel/throughput.hpp"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace ofsel;

TEST_CASE("block throughputs") {
    OfdmConfig cfg(64, 8, 1.0);

    std::vector<double> ones(cfg.n_sc, 1.0);
    for (double cb : block_throughputs(ones, cfg)) {
        CHECK(cb == doctest::Approx(1.0).epsilon(1e-12)); // log2(2)
    }

    Prng rng(3);
    std::vector<double> snr(cfg.n_sc);
    for (double& v : snr) {
        v = 30.0 * rng.uniform01();
    }
    const auto cb = block_throughputs(snr, cfg);
    REQUIRE(cb.size() == cfg.n_rb);
    for (std::size_t b = 0; b < cfg.n_rb; ++b) {
        double ref = 0.0;
        for (std::size_t i = 0; i < cfg.block_size; ++i) {
            ref += std::log2(1.0 + snr[b * cfg.block_size + i]);
        }
        ref /= static_cast<double>(cfg.block_size);
        CHECK(cb[b] == doctest::Approx(ref).epsilon(1e-12));
    }

    std::vector<double> wrong(10, 1.0);
    CHECK_THROWS_AS(block_throughputs(wrong, cfg), std::invalid_argument);
}

TEST_CASE("feedback reports") {
    std::vector<std::vector<double>> grids{{0.5, 2.0, 2.0, 0.1}};
    auto reports = make_reports(grids, 3);
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].entries.size() == 3);
    // descending by value, ties toward the lower block index
    CHECK(reports[0].entries[0] == std::pair<std::uint32_t, double>{1, 2.0});
    CHECK(reports[0].entries[1] == std::pair<std::uint32_t, double>{2, 2.0});
    CHECK(reports[0].entries[2] == std::pair<std::uint32_t, double>{0, 0.5});

    auto capped = make_reports(grids, 100);
    CHECK(capped[0].entries.size() == 4);
    CHECK_THROWS_AS(make_reports(grids, 0), std::invalid_argument);
}

TEST_CASE("ewma update follows the closed recursion") {
    SchedulerState state(1, 50.0, 0.25);
    const double c = 1.7;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        state.apply_update(0, c);
    }
    const double decay = std::pow(1.0 - 1.0 / 50.0, n);
    const double expected = decay * 0.25 + (1.0 - decay) * c;
    CHECK(std::abs(state.t_k[0] - expected) < 1e-12);

    // constant updates converge to the constant
    for (int i = 0; i < 20000; ++i) {
        state.apply_update(0, c);
    }
    CHECK(state.t_k[0] == doctest::Approx(c).epsilon(1e-9));

    CHECK_THROWS_AS(SchedulerState(0, 50.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(SchedulerState(1, 1.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(SchedulerState(1, 50.0, 0.0), std::invalid_argument);
}

TEST_CASE("single user with full feedback wins everything") {
    OfdmConfig cfg(64, 8, 1.0);
    PowerDelayProfile pdp({1.0, 0.6});
    Prng rng(5);
    auto cb = block_throughputs(snr_grid(freq_response(sample_channel(pdp, rng), cfg), cfg), cfg);
    std::vector<std::vector<double>> grids{cb};
    auto reports = make_reports(grids, cfg.n_rb);

    SchedulerState state(1, 100.0, 0.5);
    auto slot = pf_schedule_slot(reports, state, cfg, OutagePolicy::skip, &grids);
    CHECK(slot.assigned_count == cfg.n_rb);
    double mean = 0.0;
    for (std::size_t b = 0; b < cfg.n_rb; ++b) {
        CHECK(slot.blocks[b].user == 0);
        mean += cb[b];
    }
    CHECK(slot.assigned_sum == doctest::Approx(mean).epsilon(1e-12));

    CHECK_THROWS_AS(pf_schedule_slot({}, state, cfg, OutagePolicy::skip, nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(pf_schedule_slot(reports, state, cfg, OutagePolicy::round_robin, nullptr),
                    std::invalid_argument);
}

TEST_CASE("pf metric is invariant to joint scaling of one user") {
    OfdmConfig cfg(64, 8, 1.0);
    Prng rng(7);
    std::vector<std::vector<double>> grids(3);
    for (auto& g : grids) {
        g.resize(cfg.n_rb);
        for (double& v : g) {
            v = 0.5 + 3.0 * rng.uniform01();
        }
    }
    auto reports = make_reports(grids, 2);

    SchedulerState base(3, 100.0, 0.5);
    base.t_k = {0.25, 0.5, 1.0};
    SchedulerState scaled = base;

    // scale user 1 by an exact power of two in both C and T
    auto grids2 = grids;
    for (double& v : grids2[1]) {
        v *= 4.0;
    }
    scaled.t_k[1] *= 4.0;
    auto reports2 = make_reports(grids2, 2);

    auto a = pf_schedule_slot(reports, base, cfg, OutagePolicy::skip, &grids);
    auto b = pf_schedule_slot(reports2, scaled, cfg, OutagePolicy::skip, &grids2);
    for (std::size_t blk = 0; blk < cfg.n_rb; ++blk) {
        CHECK(a.blocks[blk].user == b.blocks[blk].user);
    }
}

TEST_CASE("two symmetric users split the band evenly") {
    OfdmConfig cfg(64, 8, 1.0);
    CampaignConfig cc;
    cc.k_users = 2;
    cc.n_fb = 1;
    cc.t_c = 100.0;
    cc.n_slots = 100000 + 100;
    cc.seed = 11;
    const auto stats = run_campaign(ChannelSpec::siso(PowerDelayProfile({1.0, 0.7, 0.4})), cfg,
                                    cc);
    CHECK(stats.win_share.size() == 2);
    CHECK(stats.win_share[0] + stats.win_share[1] == doctest::Approx(1.0));
    CHECK(std::abs(stats.win_share[0] - 0.5) < 0.02);
}

TEST_CASE("full feedback with one user equals full CSI") {
    OfdmConfig cfg(64, 8, 1.0);
    PowerDelayProfile pdp({1.0, 0.4, 0.2});
    CampaignConfig full;
    full.k_users = 1;
    full.n_fb = cfg.n_rb;
    full.t_c = 10.0;
    full.n_slots = 200;
    full.seed = 13;
    const auto a = run_campaign(ChannelSpec::siso(pdp), cfg, full);
    CHECK(a.outage_fraction == 0.0);
    // every block won by the single user at its true rate: the sum rate is
    // the plain average of C_b, i.e. E[C_b]
    CHECK(a.sum_rate == doctest::Approx(mean_cb(cfg.snr_scale)).epsilon(0.02));
    CHECK(a.win_share[0] == doctest::Approx(1.0));
}

TEST_CASE("campaigns replay bit-identically from the seed") {
    OfdmConfig cfg(128, 16, 2.0);
    CampaignConfig cc;
    cc.k_users = 4;
    cc.n_fb = 2;
    cc.t_c = 20.0;
    cc.n_slots = 300;
    cc.seed = 17;
    const ChannelSpec spec =
        ChannelSpec::cdd_identical(make_exponential_pdp(1.5, 32), CddConfig::linear(2, 3));
    const auto a = run_campaign(spec, cfg, cc);
    const auto b = run_campaign(spec, cfg, cc);
    CHECK(a.sum_rate == b.sum_rate);
    CHECK(a.max_cb_mean == b.max_cb_mean);
    CHECK(a.win_share == b.win_share);
    CHECK(a.outage_fraction == b.outage_fraction);

    cc.seed = 18;
    const auto c = run_campaign(spec, cfg, cc);
    CHECK(a.sum_rate != c.sum_rate);
}

TEST_CASE("round robin fills outages and lowers the per-block rate") {
    OfdmConfig cfg(256, 32, 4.0);
    CampaignConfig cc;
    cc.k_users = 8;
    cc.n_fb = 1;
    cc.t_c = 50.0;
    cc.n_slots = 3000;
    cc.seed = 19;
    const ChannelSpec spec = ChannelSpec::siso(make_exponential_pdp(1.5, 32));

    cc.policy = OutagePolicy::skip;
    const auto skip = run_campaign(spec, cfg, cc);
    cc.policy = OutagePolicy::round_robin;
    const auto rr = run_campaign(spec, cfg, cc);

    CHECK(skip.outage_fraction > 0.0);
    CHECK(rr.outage_fraction == 0.0);
    CHECK(rr.sum_rate <= skip.sum_rate);
}

TEST_CASE("empirical max block throughput") {
    OfdmConfig cfg(128, 16, 1.0);

    // flat channel: the maximum is the common value, so its mean is E[C_b]
    const auto flat = empirical_max_cb(ChannelSpec::siso(PowerDelayProfile({1.0})), cfg, 20000, 23);
    CHECK(flat.mean == doctest::Approx(mean_cb(cfg.snr_scale)).epsilon(0.01));
    CHECK(flat.n == 20000);

    // more blocks with the same per-block statistics push the maximum up
    PowerDelayProfile pdp = make_exponential_pdp(2.0, 32);
    double prev = 0.0;
    for (std::size_t n_sc : {64u, 256u, 1024u}) {
        OfdmConfig grow(n_sc, 16, 1.0);
        const auto r = empirical_max_cb(ChannelSpec::siso(pdp), grow, 20000, 29);
        CHECK(r.mean > prev);
        prev = r.mean;
    }

    CHECK_THROWS_AS(empirical_max_cb(ChannelSpec::siso(pdp), cfg, 0, 1), std::invalid_argument);
}
