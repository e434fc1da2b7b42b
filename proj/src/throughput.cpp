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

#include "ofsel/throughput.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofsel {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kLn2 = std::numbers::ln2;

// alternating series, valid and fast for 0 < x <= 1
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= -x / static_cast<double>(k);
        const double add = -term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) {
            break;
        }
    }
    return sum - kEulerGamma - std::log(x);
}

// modified Lentz continued fraction for exp(x)*E1(x), x > 1
double e1_cf_scaled(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 400; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) {
            break;
        }
    }
    return h;
}

} // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("exp_integral_e1: x must be positive");
    }
    if (x <= 1.0) {
        return e1_series(x);
    }
    return std::exp(-x) * e1_cf_scaled(x);
}

double exp_integral_e1_scaled(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("exp_integral_e1_scaled: x must be positive");
    }
    if (x <= 1.0) {
        return std::exp(x) * e1_series(x);
    }
    return e1_cf_scaled(x);
}

double mean_cb(double snr_scale) {
    if (!(snr_scale > 0.0)) {
        throw std::invalid_argument("mean_cb: snr_scale must be positive");
    }
    return exp_integral_e1_scaled(1.0 / snr_scale) / kLn2;
}

double var_cb_first_order(double snr_scale, double s_sc_intra) {
    if (!(snr_scale > 0.0)) {
        throw std::invalid_argument("var_cb_first_order: snr_scale must be positive");
    }
    const double denom = (1.0 + snr_scale) * kLn2;
    const double v1 = snr_scale * snr_scale / (denom * denom); // Var[gamma] = gamma_bar^2
    return v1 * s_sc_intra;
}

DeltaCoeffs DeltaCoeffs::from(double gamma_bar) {
    const double a3 = -1.0 / (2.0 * (1.0 + gamma_bar) * (1.0 + gamma_bar) * kLn2);
    return from(gamma_bar, a3);
}

DeltaCoeffs DeltaCoeffs::from(double gamma_bar, double a3) {
    DeltaCoeffs c{};
    c.a3 = a3;
    c.a2 = 1.0 / ((1.0 + gamma_bar) * kLn2) - 2.0 * gamma_bar * a3;
    const double g2 = gamma_bar * gamma_bar;
    c.b1 = g2 * (c.a2 * c.a2 + 8.0 * c.a2 * c.a3 * gamma_bar + 16.0 * c.a3 * c.a3 * g2);
    c.b2 = 4.0 * c.a3 * c.a3 * g2 * g2;
    return c;
}

double var_cb_from(const DeltaCoeffs& coeffs, double s_sc_1, double s_sc_2) {
    return coeffs.b1 * s_sc_1 + coeffs.b2 * s_sc_2;
}

double var_cb_second_order(double snr_scale, double s_sc_1, double s_sc_2) {
    if (!(snr_scale > 0.0)) {
        throw std::invalid_argument("var_cb_second_order: snr_scale must be positive");
    }
    if (s_sc_2 > s_sc_1 + 1e-12) {
        throw std::invalid_argument("var_cb_second_order: S_SC(2,...) cannot exceed S_SC(1,...)");
    }
    return var_cb_from(DeltaCoeffs::from(snr_scale), s_sc_1, s_sc_2);
}

CbMoments CbMoments::make(double snr_scale, double s_sc_1, double s_sc_2) {
    CbMoments m{};
    m.e1 = mean_cb(snr_scale);
    m.mean = m.e1;
    m.v1 = var_cb_first_order(snr_scale, 1.0);
    m.var_fo = m.v1 * s_sc_1;
    m.var_so = var_cb_second_order(snr_scale, s_sc_1, s_sc_2);
    return m;
}

double max_cb_os_bound(const CbMoments& m, double phi, bool second_order) {
    if (!(phi > 0.0) || phi > 1.0) {
        throw std::invalid_argument("max_cb_os_bound: phi must lie in (0,1]");
    }
    const double n_eff = 1.0 / phi;
    const double var = second_order ? m.var_so : m.var_fo;
    return m.e1 + (n_eff - 1.0) / std::sqrt(2.0 * n_eff - 1.0) * std::sqrt(var);
}

double max_cb_gaussian(const CbMoments& m, double s_sc_intra, double phi, bool second_order) {
    if (!(phi > 0.0) || phi > 1.0) {
        throw std::invalid_argument("max_cb_gaussian: phi must lie in (0,1]");
    }
    const double var = second_order ? m.var_so : m.v1 * s_sc_intra;
    return m.e1 + std::sqrt(2.0 * var * std::log(1.0 / phi));
}

} // namespace ofsel
