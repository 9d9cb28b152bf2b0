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

#pragma once

#include <algorithm>
#include <string>

namespace fdmimo {

enum class CancellerArchitecture { taps, aux_tx };

/// Sub-precoder selection for the effective downlink channel. auto_select
/// resolves to mrt for a single-antenna downlink receiver and open_loop
/// otherwise.
enum class PrecoderMode { auto_select, open_loop, closed_loop, mrt, scalar };

/// Full-duplex node and operating-point description. Powers are the current
/// operating point; sweeps rewrite them per grid point.
struct SystemConfig {
    int n_k = 4; ///< TX antennas at the FD node
    int m_k = 4; ///< RX antennas at the FD node
    int m_q = 1; ///< antennas at the downlink receiver
    int n_m = 1; ///< antennas at the uplink transmitter
    int d_m = 0; ///< uplink streams; 0 resolves to min(m_k, n_m)

    double p_k_dbm = 40.0;       ///< downlink TX power
    double p_m_dbm = 20.0;       ///< uplink TX power
    double lambda_a_dbm = -60.0; ///< residual-SI threshold per RX RF chain

    CancellerArchitecture architecture = CancellerArchitecture::taps;
    int n_elements = 4; ///< canceller taps or AUX TX chains

    int alpha_max = 0; ///< cap on effective TX antennas; 0 resolves to n_k
    PrecoderMode precoder_mode = PrecoderMode::auto_select;

    bool enumerate_realizations = false; ///< search all MUX/DEMUX placements
    int realization_cap = 10000;         ///< hard cap on enumerated placements
};

inline int resolved_d_m(const SystemConfig& cfg) {
    return cfg.d_m > 0 ? cfg.d_m : std::min(cfg.m_k, cfg.n_m);
}

inline int resolved_alpha_max(const SystemConfig& cfg) {
    return cfg.alpha_max > 0 ? cfg.alpha_max : cfg.n_k;
}

inline PrecoderMode resolved_precoder_mode(const SystemConfig& cfg) {
    if (cfg.precoder_mode != PrecoderMode::auto_select)
        return cfg.precoder_mode;
    return cfg.m_q == 1 ? PrecoderMode::mrt : PrecoderMode::open_loop;
}

/// Throws std::invalid_argument naming the offending field.
void validate(const SystemConfig& cfg);

std::string to_string(CancellerArchitecture arch);
std::string to_string(PrecoderMode mode);

} // namespace fdmimo
