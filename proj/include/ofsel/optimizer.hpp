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

#ifndef OFSEL_OPTIMIZER_HPP
#define OFSEL_OPTIMIZER_HPP

#include "ofsel/analytics.hpp"
#include "ofsel/channel.hpp"

#include <cstdint>
#include <span>
#include <vector>

// Per-user cyclic delay selection for the linear pattern D_i = (i-1) D:
// exhaustive search of an analytic E[max_b C_b] objective, or the closed
// form from the RMS delay spread, coherence bandwidth and the Chebyshev
// maximum-delay constraint.

namespace ofsel {

enum class DelayObjective { os, gaussian };
enum class DelayMethod { os_search, gaussian_search, rms_closed_form };

struct DelayDecision {
    std::uint32_t d_star = 0;
    DelayMethod method = DelayMethod::gaussian_search;
    // searched objective per delay (search methods only)
    std::vector<std::pair<std::uint32_t, double>> objective_curve;
    // closed-form intermediates (rms method only)
    std::int64_t d_bc = -1;
    std::int64_t d_max = -1;
    // provenance
    double kappa = 0.0;
    double k_c = 0.0;
    std::uint32_t search_limit = 0;
};

// argmax over integer delays of the analytic objective evaluated with the
// CDD-weighted correlation sums; identical per-antenna profiles. The sweep
// stops once the effective block count has peaked and both objective factors
// have decreased for three consecutive delays (they are then jointly
// shrinking, so the objective cannot recover). Ties break toward smaller D.
DelayDecision search_delay(const PowerDelayProfile& pdp, const OfdmConfig& cfg, std::size_t n_tx,
                           DelayObjective objective);

std::vector<std::pair<std::uint32_t, double>> delay_objective_curve(const PowerDelayProfile& pdp,
                                                                    const OfdmConfig& cfg,
                                                                    std::size_t n_tx,
                                                                    DelayObjective objective);

// d_bc: largest delay keeping the CDD coherence bandwidth at least one block
// wide; d_max: smallest Chebyshev maximum delay spread among the first
// n_tx - 1 antennas; d_star = min of the two.
DelayDecision closed_form_delay(std::span<const DelaySpreadStats> stats, std::size_t block_size,
                                double k_c, double kappa, std::size_t n_tx);

// Pick k_c so that the closed form reproduces the Gaussian-search delays on
// a reference channel set (least squares over a log grid around
// default_k_c). The coherence constant is otherwise unspecified.
double calibrate_k_c(std::span<const PowerDelayProfile> reference, const OfdmConfig& cfg,
                     std::size_t n_tx, double kappa);

} // namespace ofsel

#endif
