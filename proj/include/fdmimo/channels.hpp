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

#include "fdmimo/config.hpp"
#include "fdmimo/rng.hpp"
#include "fdmimo/types.hpp"

namespace fdmimo {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Propagation and noise parameters for the three involved links.
struct ChannelParams {
    double pathloss_dl_db = 110.0;     ///< downlink H_qk
    double pathloss_ul_db = 110.0;     ///< uplink H_km
    double pathloss_si_db = 40.0;      ///< self-interference H_kk
    double ricean_k_db = 35.0;         ///< K-factor of the SI channel
    double noise_floor_k_dbm = -110.0; ///< at the FD node
    double noise_floor_q_dbm = -90.0;  ///< at the downlink receiver
};

/// One realization of the three channel matrices.
struct ChannelSet {
    CMat h_qk; ///< m_q x n_k downlink
    CMat h_km; ///< m_k x n_m uplink
    CMat h_kk; ///< m_k x n_k self-interference
};

/// IID Rayleigh fading: entries CN(0, 10^(-pathloss_db/10)), drawn row-major.
CMat draw_rayleigh_channel(int rows, int cols, double pathloss_db, Rng& rng);

/// Ricean fading for the SI channel. Each entry is
///   sqrt(P*k/(1+k)) * exp(j*theta_ij) + sqrt(P/(1+k)) * CN(0,1)
/// with P = 10^(-pathloss_db/10) and k the linear K-factor. The line-of-sight
/// phase theta_ij = 2*pi*i*j/max(rows, cols) is a fixed non-separable ramp
/// (the DFT kernel for square matrices), so the LoS component is full rank
/// and reproducible independently of the seed. k_factor_db <= -300 degrades
/// to pure Rayleigh.
CMat draw_ricean_si_channel(int rows, int cols, double pathloss_db, double k_factor_db, Rng& rng);

/// One full realization. Draw order is h_kk, h_qk, h_km so that the SI
/// channel consumes the same substream positions whatever the remote node
/// antenna counts are (keeps trials paired across m_q / n_m configurations).
ChannelSet draw_channel_set(const SystemConfig& cfg, const ChannelParams& params, Rng& rng);

} // namespace fdmimo
