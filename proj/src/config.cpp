// SPDX-License-Identifier: Apache-2.0
//
// fdmimo: reduced-complexity analog self-interference cancellation and
// joint transmit/receive digital beamforming for full-duplex MIMO nodes
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

#include "fdmimo/config.hpp"

#include <stdexcept>

namespace fdmimo {

void validate(const SystemConfig& cfg) {
    auto require = [](bool ok, const char* msg) {
        if (!ok)
            throw std::invalid_argument(msg);
    };
    require(cfg.n_k >= 1, "n_k must be >= 1");
    require(cfg.m_k >= 1, "m_k must be >= 1");
    require(cfg.m_q >= 1, "m_q must be >= 1");
    require(cfg.n_m >= 1, "n_m must be >= 1");
    require(cfg.d_m >= 0, "d_m must be >= 0");
    if (cfg.d_m > 0)
        require(cfg.d_m <= std::min(cfg.m_k, cfg.n_m), "d_m exceeds min(m_k, n_m)");
    require(cfg.n_elements >= 0, "n_elements must be >= 0");
    if (cfg.architecture == CancellerArchitecture::taps)
        require(cfg.n_elements <= cfg.m_k * cfg.n_k, "n_elements exceeds m_k*n_k taps");
    else
        require(cfg.n_elements <= cfg.m_k, "n_elements exceeds m_k AUX TX chains");
    require(cfg.alpha_max >= 0 && cfg.alpha_max <= cfg.n_k, "alpha_max must lie in [0, n_k]");
    require(cfg.realization_cap >= 1, "realization_cap must be >= 1");
}

std::string to_string(CancellerArchitecture arch) {
    return arch == CancellerArchitecture::taps ? "taps" : "aux";
}

std::string to_string(PrecoderMode mode) {
    switch (mode) {
    case PrecoderMode::auto_select: return "auto";
    case PrecoderMode::open_loop: return "open_loop";
    case PrecoderMode::closed_loop: return "closed_loop";
    case PrecoderMode::mrt: return "mrt";
    case PrecoderMode::scalar: return "scalar";
    }
    return "auto";
}

} // namespace fdmimo
