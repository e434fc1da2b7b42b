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

#include "ofsel/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ofsel {

namespace {

const char* method_name(DelayMethod m) {
    switch (m) {
    case DelayMethod::os_search:
        return "os_search";
    case DelayMethod::gaussian_search:
        return "gaussian_search";
    case DelayMethod::rms_closed_form:
        return "rms_closed_form";
    }
    return "unknown";
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        }
        out << content;
        if (!out.good()) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json to_json(const CorrelationSummary& s) {
    nlohmann::json j{{"s_sc_intra", s.s_sc_intra}, {"phi", s.phi},
                     {"eff_paths", s.eff_paths},   {"eff_blocks", s.eff_blocks},
                     {"rho_sc", s.rho_sc},         {"rho_rb", s.rho_rb}};
    if (s.cdd_delays) {
        j["cdd_delays"] = *s.cdd_delays;
    }
    return j;
}

nlohmann::json to_json(const CbMoments& m) {
    return {{"mean", m.mean}, {"e1", m.e1}, {"v1", m.v1}, {"var_first_order", m.var_fo},
            {"var_second_order", m.var_so}};
}

nlohmann::json to_json(const DelayDecision& d) {
    nlohmann::json j{{"d_star", d.d_star}, {"method", method_name(d.method)}};
    if (d.method == DelayMethod::rms_closed_form) {
        j["d_bc"] = d.d_bc;
        j["d_max"] = d.d_max;
        j["kappa"] = d.kappa;
        j["k_c"] = d.k_c;
    } else {
        j["search_limit"] = d.search_limit;
        nlohmann::json curve = nlohmann::json::array();
        for (const auto& [delay, value] : d.objective_curve) {
            curve.push_back({{"d", delay}, {"objective", value}});
        }
        j["objective_curve"] = std::move(curve);
    }
    return j;
}

nlohmann::json to_json(const CampaignStats& s) {
    return {{"sum_rate", s.sum_rate},
            {"sum_rate_se", s.sum_rate_se},
            {"max_cb_mean", s.max_cb_mean},
            {"max_cb_se", s.max_cb_se},
            {"win_share", s.win_share},
            {"outage_fraction", s.outage_fraction},
            {"slots_measured", s.slots_measured},
            {"seed", s.seed}};
}

std::uint64_t config_hash(const std::vector<std::pair<std::string, std::string>>& items) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [key, value] : items) {
        mix(key);
        h ^= 0x3d; // '='
        h *= 0x100000001b3ULL;
        mix(value);
        h ^= 0x0a; // '\n'
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const std::vector<std::pair<std::string, std::string>>& items) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(items)));
    return buf;
}

CsvWriter::CsvWriter(std::string experiment,
                     std::vector<std::pair<std::string, std::string>> config,
                     std::vector<std::string> columns)
    : experiment_(std::move(experiment)), config_(std::move(config)),
      columns_(std::move(columns)) {}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) {
        throw std::invalid_argument("CsvWriter: row width mismatch");
    }
    rows_.push_back(values);
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    out << "# ofsel " << experiment_ << "\n";
    out << "#";
    for (const auto& [key, value] : config_) {
        out << ' ' << key << '=' << value;
    }
    out << "\n";
    out << "# config_hash=" << config_hash_hex(config_) << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << columns_[i];
    }
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_sig(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

void CsvWriter::write(const std::filesystem::path& path) const { atomic_write(path, str()); }

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

} // namespace ofsel
