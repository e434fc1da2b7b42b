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

#ifndef OFSEL_THROUGHPUT_HPP
#define OFSEL_THROUGHPUT_HPP

// Closed-form moments of the block average throughput over Rayleigh
// subcarrier SNRs, and the two analytic approximations of E[max_b C_b]:
// the order-statistics upper bound and the Gaussian/WLLN form.

namespace ofsel {

// Exponential integral E1(x) = int_1^inf exp(-x t)/t dt, x > 0.
// Power series below 1, continued fraction above; relative error < 1e-12.
double exp_integral_e1(double x);

// exp(x) * E1(x), stable for large x where E1 underflows.
double exp_integral_e1_scaled(double x);

// E[C_b] = E[log2(1+gamma)] = e^{1/g} E1(1/g) / ln 2 for mean SNR g;
// independent of the delay profile (identical marginals).
double mean_cb(double snr_scale);

// First-order delta-method variance: Var[C_b] = V1 * S_SC(1,0,S) with
// V1 = g^2 / ((1+g) ln 2)^2.
double var_cb_first_order(double snr_scale, double s_sc_intra);

// Second-order expansion coefficients of log2(1+gamma) about the mean.
struct DeltaCoeffs {
    double a2, a3; // linear / quadratic expansion coefficients
    double b1, b2; // Var[C_b] = b1 S_SC(1,0,S) + b2 S_SC(2,0,S)

    static DeltaCoeffs from(double gamma_bar);
    // a3 supplied by the caller (a3 = 0 collapses the expansion to first
    // order); a2 keeps its exact dependence a2 = 1/((1+g)ln2) - 2 g a3.
    static DeltaCoeffs from(double gamma_bar, double a3);
};

double var_cb_second_order(double snr_scale, double s_sc_1, double s_sc_2);
double var_cb_from(const DeltaCoeffs& coeffs, double s_sc_1, double s_sc_2);

struct CbMoments {
    double mean;   // E[C_b], equals e1
    double e1;     // E[log2(1+gamma_1)]
    double v1;     // Var[gamma_1] / ((1+E[gamma_1]) ln 2)^2
    double var_fo; // v1 * S_SC(1,0,S)
    double var_so; // second-order variance

    static CbMoments make(double snr_scale, double s_sc_1, double s_sc_2);
};

// Order-statistics bound with the real-valued effective block count 1/phi:
// e1 + (1/phi - 1)/sqrt(2/phi - 1) * sqrt(Var[C_b]).
double max_cb_os_bound(const CbMoments& m, double phi, bool second_order = false);

// Gaussian approximation e1 + sqrt(2 Var[C_b] ln(1/phi)).
double max_cb_gaussian(const CbMoments& m, double s_sc_intra, double phi,
                       bool second_order = false);

} // namespace ofsel

#endif
