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

#include "ofsel/kernels.hpp"

#include <cstdlib>

namespace ofsel::kernels {

namespace {

const KernelSet* resolve(std::string_view name) {
    if (name == "scalar") {
        return &scalar_kernels();
    }
    if (name == "avx2") {
        return avx2_available() ? &avx2_kernels() : nullptr;
    }
    if (name == "auto" || name.empty()) {
        return avx2_available() ? &avx2_kernels() : &scalar_kernels();
    }
    return nullptr;
}

const KernelSet*& active_slot() {
    static const KernelSet* active = [] {
        const char* env = std::getenv("OFSEL_KERNELS");
        const KernelSet* set = resolve(env ? std::string_view{env} : std::string_view{"auto"});
        return set ? set : resolve("auto");
    }();
    return active;
}

} // namespace

const KernelSet& active_kernels() { return *active_slot(); }

bool select_kernels(std::string_view name) {
    const KernelSet* set = resolve(name);
    if (!set) {
        return false;
    }
    active_slot() = set;
    return true;
}

} // namespace ofsel::kernels
