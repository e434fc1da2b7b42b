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

#ifndef OFSEL_TOOLS_EXPERIMENTS_HPP
#define OFSEL_TOOLS_EXPERIMENTS_HPP

#include "ofsel/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ofsel::tools {

// Desk-scale reproductions of the paper-style figure families. Each run
// writes <figure>.csv plus a <figure>.json sidecar into out_dir; grids are
// deliberately small by default and overridable from the command line.
struct ExperimentOptions {
    std::size_t n_sc = 1024;
    std::size_t block_size = 32;
    double snr_scale = 10.0;
    std::size_t k_users = 32;
    std::size_t n_fb = 1;
    double t_c = 100.0;
    std::size_t n_slots = 2000;
    std::uint64_t seed = 1;
    std::size_t n_tx = 2;
    double kappa = 0.9;
    double k_c = 0.0; // 0: default_k_c(n_sc)
    int max_taps = 64;

    std::vector<double> eff_grid{1.05, 1.41, 2.0, 2.83, 4.0, 5.66, 8.0, 11.3, 16.0, 22.6, 32.0};
    std::vector<double> tau_grid{0.05, 0.2, 0.5, 1.0, 1.6, 2.5, 4.0, 6.0};
    std::vector<std::size_t> s_grid{8, 16, 32, 64};
    std::vector<std::uint32_t> fixed_delays{3, 5, 8};
    std::uint32_t d_sweep_max = 24;

    double base_eff = 1.6246; // reference channel for the delay sweeps

    std::filesystem::path out_dir = ".";
    bool progress = true;
};

// figure ids: fig4 fig5 fig6 fig7 fig8 fig9 fig10 fig11
bool known_figure(const std::string& id);
void run_figure(const std::string& id, const ExperimentOptions& opt);

} // namespace ofsel::tools

#endif
