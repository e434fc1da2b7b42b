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

#ifndef OFSEL_ANALYTICS_HPP
#define OFSEL_ANALYTICS_HPP

#include "ofsel/channel.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Closed-form correlation calculus of a power delay profile: per-subcarrier
// SNR correlation, intra-/inter-block sum correlations and their inverses
// (effective path and block counts), the CDD correlation weight, and delay
// spread statistics. Everything here is deterministic; the Monte-Carlo
// counterparts live in scheduler.hpp and in the tests.

namespace ofsel {

// Cov(H_{n1}, H_{n2}) = sum_m alpha_m^2 exp(-j 2 pi (m-1) dn / n_sc),
// dn = n2 - n1 (any integer; the sum is periodic in n_sc).
std::complex<double> cov_h(const PowerDelayProfile& pdp, long long delta_n, std::size_t n_sc);

// SNR correlation coefficient rho_SC(|dn|) = |Cov(H,H')|^2, in [0,1].
double rho_sc(const PowerDelayProfile& pdp, long long delta_n, std::size_t n_sc);

// |(1/n_tx) sum_i exp(-j 2 pi D_i dn / n_sc)|^2, in [0,1].
double cdd_weight(const CddConfig& cdd, long long delta_n, std::size_t n_sc);

// rho_SC of the CDD channel when every antenna sees the same profile:
// rho_SC(dn) * cdd_weight(dn).
double rho_sc_cdd(const PowerDelayProfile& pdp, const CddConfig& cdd, long long delta_n,
                  std::size_t n_sc);
// Convenience guard for the general case: profiles must be identical across
// antennas, otherwise throws std::invalid_argument (route differing profiles
// through cdd_compose_pdp + rho_sc instead).
double rho_sc_cdd(std::span<const PowerDelayProfile> pdps, const CddConfig& cdd,
                  long long delta_n, std::size_t n_sc);

// Precomputed rho_SC(dn) for dn = 0..n_sc-1; the table is periodic and even,
// and lookups reduce any integer offset accordingly.
class RhoScTable {
  public:
    RhoScTable(const PowerDelayProfile& pdp, std::size_t n_sc);
    // CDD-weighted table for identical per-antenna profiles.
    RhoScTable(const PowerDelayProfile& pdp, const CddConfig& cdd, std::size_t n_sc);

    double operator[](long long delta_n) const {
        const auto n = static_cast<long long>(values_.size());
        long long r = delta_n % n;
        if (r < 0) {
            r += n;
        }
        return values_[static_cast<std::size_t>(r)];
    }

    std::size_t period() const { return values_.size(); }
    std::span<const double> values() const { return values_; }

  private:
    std::vector<double> values_;
};

// S_SC(r, |db|, S): the double sum of rho_SC^r over all subcarrier pairs of
// two blocks db apart, divided by S^2. Only r in {1, 2} is supported.
// Evaluated in O(S) through the pair-count form; the brute-force double sum
// is kept in the tests as the oracle.
double sum_sc(const RhoScTable& rho, int r, long long delta_b, std::size_t block_size);
double sum_sc(const PowerDelayProfile& pdp, int r, long long delta_b, std::size_t block_size,
              std::size_t n_sc);

// Frequency selectivity measure 1/S_SC(1,0,n_sc) == 1/sum alpha^4, the
// effective number of paths. The closed form is exact as long as distinct
// taps occupy distinct delays modulo n_sc (always true here: profiles are
// indexed by delay and never longer than n_sc).
double selectivity_measure(const PowerDelayProfile& pdp, std::size_t n_sc);
inline double effective_paths(const PowerDelayProfile& pdp) { return 1.0 / pdp.sum_gain4(); }

// First-order block-throughput correlation rho_RB(|db|) = S_SC(1,|db|,S) / S_SC(1,0,S).
double rho_rb(const RhoScTable& rho, long long delta_b, std::size_t block_size);
double rho_rb(const PowerDelayProfile& pdp, long long delta_b, std::size_t block_size,
              std::size_t n_sc);

// Inter-block sum correlation Phi(S) = (1/N_RB) sum_b rho_RB(b); its inverse
// is the effective number of blocks.
double inter_block_sum(const RhoScTable& rho, std::size_t block_size);
double inter_block_sum(const PowerDelayProfile& pdp, std::size_t block_size, std::size_t n_sc);
// Reduced single-sum form over an explicit rho_RB sequence (synthetic
// channels, tests).
double inter_block_sum_from(std::span<const double> rho_rb_values);

// Two-antenna closed form for the effective paths of a CDD channel with
// identical per-antenna profiles and delays [0, d]:
//   2 / (sum alpha^4 + sum_{m>d} alpha_m^2 alpha_{m-d}^2) for d < L, else 2 / sum alpha^4.
double effective_paths_cdd(const PowerDelayProfile& pdp, std::uint32_t d);

struct DelaySpreadStats {
    double mu;      // mean excess delay, samples
    double tau_rms; // RMS delay spread, samples
    int tau_max;    // Chebyshev maximum delay spread, samples
    double kappa;   // power-capture ratio used for tau_max
};

// mu = sum (m-1) alpha_m^2, tau_rms = sqrt(sum (m-1)^2 alpha_m^2 - mu^2).
DelaySpreadStats rms_delay(const PowerDelayProfile& pdp, double kappa = 0.9);

// RMS delay spread of the composed CDD channel from per-antenna stats:
// sqrt( mean(tau_i^2 + (mu_i + D_i)^2) - mean(mu_i + D_i)^2 ).
double cdd_rms_delay(std::span<const DelaySpreadStats> stats, const CddConfig& cdd);
// Same quantity for the linear pattern D_i = (i-1) d via the quadratic
// sqrt(a d^2 + b d + c + mean(tau^2)); agrees with the general form to 1e-12.
double cdd_rms_delay_linear(std::span<const DelaySpreadStats> stats, double d);

// B_c = 1/(k_c * tau_rms); +inf for a flat channel. Expressed in subcarriers
// when k_c folds in the band size, see default_k_c.
double coherence_bandwidth(double tau_rms, double k_c);

// Default coherence constant: tau_rms of one sample maps to a coherence
// bandwidth of n_sc/(2 pi) subcarriers.
double default_k_c(std::size_t n_sc);

// Chebyshev maximum delay spread: ceil(2 tau_rms / sqrt(1-kappa)) + 1.
int tau_max(double tau_rms, double kappa);

struct CorrelationSummary {
    std::vector<double> rho_sc; // rho_SC(dn), dn = 0..n_sc-1
    std::vector<double> rho_rb; // rho_RB(db), db = 0..n_rb-1
    double s_sc_intra;          // S_SC(1,0,S)
    double phi;                 // inter-block sum correlation
    double eff_paths;           // 1/S_SC(1,0,n_sc)
    double eff_blocks;          // 1/phi
    std::optional<std::vector<std::uint32_t>> cdd_delays;
};

CorrelationSummary summarize(const PowerDelayProfile& pdp, const OfdmConfig& cfg);
CorrelationSummary summarize(const PowerDelayProfile& pdp, const OfdmConfig& cfg,
                             const CddConfig& cdd);

// Exponential profile whose effective path count hits `target` (bisection on
// tau_o). target must lie in [1, max_taps).
PowerDelayProfile exponential_pdp_for_effective_paths(double target, int max_taps = 64);

} // namespace ofsel

#endif
