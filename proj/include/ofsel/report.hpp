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

#ifndef OFSEL_REPORT_HPP
#define OFSEL_REPORT_HPP

#include "ofsel/analytics.hpp"
#include "ofsel/optimizer.hpp"
#include "ofsel/scheduler.hpp"
#include "ofsel/throughput.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ofsel {

nlohmann::json to_json(const CorrelationSummary& s);
nlohmann::json to_json(const CbMoments& m);
nlohmann::json to_json(const DelayDecision& d);
nlohmann::json to_json(const CampaignStats& s);

// FNV-1a over the canonical key=value dump; stamped into every output file
// so runs can be matched to their configuration.
std::uint64_t config_hash(const std::vector<std::pair<std::string, std::string>>& items);
std::string config_hash_hex(const std::vector<std::pair<std::string, std::string>>& items);

// CSV writer with a commented preamble (tool line, config echo with seed and
// hash, column names with units). Rows print with 12 significant digits.
// Data is staged in memory and written atomically: the target file appears
// complete or not at all.
class CsvWriter {
  public:
    CsvWriter(std::string experiment, std::vector<std::pair<std::string, std::string>> config,
              std::vector<std::string> columns);

    void add_row(const std::vector<double>& values);
    void write(const std::filesystem::path& path) const;
    std::string str() const;

  private:
    std::string experiment_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

// JSON sidecar, also written atomically.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::string format_sig(double v); // 12 significant digits

} // namespace ofsel

#endif
