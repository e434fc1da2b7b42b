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

#include "ofsel/analytics.hpp"
#include "ofsel/channel.hpp"
#include "ofsel/prng.hpp"
#include "ofsel/scheduler.hpp"
#include "ofsel/throughput.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace ofsel;

TEST_CASE("exponential integral") {
    // values frozen from the quadrature oracle
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552).epsilon(1e-12));
    CHECK(exp_integral_e1(0.1) == doctest::Approx(1.82292395841939).epsilon(1e-12));

    for (double x : {0.05, 0.3, 0.9, 1.0, 1.1, 2.5, 7.0, 10.0}) {
        CHECK(exp_integral_e1(x) == doctest::Approx(oracles::quad_e1(x)).epsilon(1e-10));
        CHECK(exp_integral_e1_scaled(x) ==
              doctest::Approx(std::exp(x) * oracles::quad_e1(x)).epsilon(1e-10));
    }

    // asymptotic ceiling e^{-x}/x
    for (double x : {5.0, 20.0, 100.0}) {
        CHECK(exp_integral_e1(x) <= std::exp(-x) / x);
        CHECK(exp_integral_e1(x) >= std::exp(-x) / (x + 1.0)); // matching floor
    }

    // scaled form stays finite where the plain value underflows
    CHECK(exp_integral_e1_scaled(800.0) == doctest::Approx(1.0 / 800.0).epsilon(0.01));

    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-1.0), std::domain_error);
}

TEST_CASE("mean block throughput") {
    // e * E1(1) / ln 2, frozen from the oracle
    CHECK(mean_cb(1.0) == doctest::Approx(0.860347382163).epsilon(1e-9));

    // vanishes with the SNR, grows monotonically
    CHECK(mean_cb(1e-9) < 1e-8);
    double prev = 0.0;
    for (double snr : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double v = mean_cb(snr);
        CHECK(v > prev);
        prev = v;
    }

    // Monte Carlo over 1e6 unit-mean exponential SNR draws
    Prng rng(7);
    double acc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        acc += std::log2(1.0 + std::norm(rng.complex_gaussian()));
    }
    CHECK(mean_cb(1.0) == doctest::Approx(acc / n).epsilon(0.005));

    CHECK_THROWS_AS(mean_cb(0.0), std::invalid_argument);
}

TEST_CASE("first-order variance") {
    // flat channel at unit SNR: (1/(2 ln 2))^2
    const double expected = 1.0 / (2.0 * std::numbers::ln2) / (2.0 * std::numbers::ln2);
    CHECK(var_cb_first_order(1.0, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(var_cb_first_order(1.0, 0.0) == 0.0);

    // the delta method is accurate at moderate-to-high SNR
    OfdmConfig cfg(1024, 32, 10.0);
    PowerDelayProfile pdp({1.0, 0.7, 0.4, 0.2});
    const double s1 = sum_sc(pdp, 1, 0, cfg.block_size, cfg.n_sc);
    Prng rng(17);
    double sum = 0.0, sum_sq = 0.0;
    const int trials = 200000;
    for (int t = 0; t < trials; ++t) {
        const auto cb =
            block_throughputs(snr_grid(freq_response(sample_channel(pdp, rng), cfg), cfg), cfg);
        sum += cb[0];
        sum_sq += cb[0] * cb[0];
    }
    const double mc = sum_sq / trials - (sum / trials) * (sum / trials);
    CHECK(var_cb_first_order(cfg.snr_scale, s1) == doctest::Approx(mc).epsilon(0.10));
}

TEST_CASE("second-order variance coefficients") {
    // at unit SNR: A2 = 1/(2 ln2) + 1/(4 ln2), A3 = -1/(8 ln2)
    const DeltaCoeffs c = DeltaCoeffs::from(1.0);
    CHECK(c.a2 == doctest::Approx(1.0 / (2.0 * std::numbers::ln2) +
                                  1.0 / (4.0 * std::numbers::ln2))
                      .epsilon(1e-12));
    CHECK(c.a3 == doctest::Approx(-1.0 / (8.0 * std::numbers::ln2)).epsilon(1e-12));

    // zeroing the quadratic term everywhere collapses to first order
    for (double snr : {0.5, 1.0, 4.0}) {
        const DeltaCoeffs fo = DeltaCoeffs::from(snr, 0.0);
        CHECK(var_cb_from(fo, 0.7, 0.5) ==
              doctest::Approx(var_cb_first_order(snr, 0.7)).epsilon(1e-12));
    }

    CHECK(var_cb_second_order(1.0, 0.0, 0.0) == 0.0);
    CHECK(var_cb_second_order(1.0, 0.6, 0.4) > 0.0);
    CHECK_THROWS_AS(var_cb_second_order(1.0, 0.3, 0.6), std::invalid_argument);

    // at unit SNR the second-order value is the better variance estimate
    OfdmConfig cfg(1024, 32, 1.0);
    PowerDelayProfile pdp({1.0, 0.8, 0.3});
    RhoScTable table(pdp, cfg.n_sc);
    const double s1 = sum_sc(table, 1, 0, cfg.block_size);
    const double s2 = sum_sc(table, 2, 0, cfg.block_size);
    Prng rng(19);
    double sum = 0.0, sum_sq = 0.0;
    const int trials = 150000;
    for (int t = 0; t < trials; ++t) {
        const auto cb =
            block_throughputs(snr_grid(freq_response(sample_channel(pdp, rng), cfg), cfg), cfg);
        sum += cb[0];
        sum_sq += cb[0] * cb[0];
    }
    const double mc = sum_sq / trials - (sum / trials) * (sum / trials);
    CHECK(std::abs(var_cb_second_order(1.0, s1, s2) - mc) <
          std::abs(var_cb_first_order(1.0, s1) - mc));
}

TEST_CASE("moments bundle") {
    const CbMoments m = CbMoments::make(2.0, 0.6, 0.45);
    CHECK(m.mean == m.e1);
    CHECK(m.var_fo == doctest::Approx(m.v1 * 0.6).epsilon(1e-12));
    CHECK(m.var_so == doctest::Approx(var_cb_second_order(2.0, 0.6, 0.45)).epsilon(1e-12));
    CHECK(m.var_so >= 0.0);
}

TEST_CASE("order statistics bound") {
    const CbMoments m = CbMoments::make(1.0, 1.0, 1.0);

    // single effective block: no gain term
    CHECK(max_cb_os_bound(m, 1.0) == doctest::Approx(m.e1));

    // block-structured channel reduces to the classic iid bound with N blocks
    for (double n_blocks : {2.0, 8.0, 32.0}) {
        const double expected =
            m.e1 + (n_blocks - 1.0) / std::sqrt(2.0 * n_blocks - 1.0) * std::sqrt(m.v1);
        CHECK(max_cb_os_bound(m, 1.0 / n_blocks) == doctest::Approx(expected).epsilon(1e-12));
    }

    // second-order flag swaps in the second-order variance
    const CbMoments mm = CbMoments::make(1.0, 0.7, 0.5);
    const double with_so = max_cb_os_bound(mm, 0.25, true);
    CHECK(with_so == doctest::Approx(mm.e1 + 3.0 / std::sqrt(7.0) * std::sqrt(mm.var_so))
                         .epsilon(1e-12));

    CHECK_THROWS_AS(max_cb_os_bound(m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(max_cb_os_bound(m, 1.5), std::invalid_argument);
}

TEST_CASE("gaussian approximation and the three reference channels") {
    const double s_rb = 32.0;
    const double n_rb = 32.0;
    const CbMoments m = CbMoments::make(1.0, 1.0, 1.0);

    CHECK(max_cb_gaussian(m, 1.0, 1.0) == doctest::Approx(m.e1)); // flat: no gain

    // gain term sqrt(S_SC ln(1/phi)) for the flat / independent / ideal channels
    auto gain = [&m](double s_sc, double phi) {
        return (max_cb_gaussian(m, s_sc, phi) - m.e1) / std::sqrt(2.0 * m.v1);
    };
    CHECK(gain(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(gain(1.0 / s_rb, 1.0 / n_rb) ==
          doctest::Approx(std::sqrt(std::log(n_rb) / s_rb)).epsilon(1e-12));
    CHECK(gain(1.0, 1.0 / n_rb) == doctest::Approx(std::sqrt(std::log(n_rb))).epsilon(1e-12));

    // ideal-vs-independent gain ratio is sqrt(S)
    CHECK(gain(1.0, 1.0 / n_rb) / gain(1.0 / s_rb, 1.0 / n_rb) ==
          doctest::Approx(std::sqrt(s_rb)).epsilon(1e-12));

    // the ideal channel wins for any block size >= 2
    for (double s : {2.0, 8.0, 256.0}) {
        const double ch_a = gain(1.0, 1.0);
        const double ch_b = gain(1.0 / s, 1.0 / n_rb);
        const double ch_c = gain(1.0, 1.0 / n_rb);
        CHECK(ch_c > ch_b);
        CHECK(ch_c > ch_a);
    }
}

TEST_CASE("both approximations grow with intra-block correlation and block diversity") {
    const CbMoments m = CbMoments::make(1.0, 1.0, 1.0);
    double prev_g = -1.0, prev_o = -1.0;
    for (double s_sc : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        const double g = max_cb_gaussian(m, s_sc, 0.25);
        CHECK(g > prev_g);
        prev_g = g;
        CbMoments mv = m;
        mv.var_fo = m.v1 * s_sc;
        const double o = max_cb_os_bound(mv, 0.25);
        CHECK(o > prev_o);
        prev_o = o;
    }
    prev_g = prev_o = -1.0;
    for (double phi : {1.0, 0.8, 0.5, 0.25, 0.1, 0.03125}) {
        const double g = max_cb_gaussian(m, 0.6, phi);
        CHECK(g > prev_g - 1e-15);
        prev_g = g;
        CbMoments mv = m;
        mv.var_fo = m.v1 * 0.6;
        const double o = max_cb_os_bound(mv, phi);
        CHECK(o > prev_o - 1e-15);
        prev_o = o;
    }
}
