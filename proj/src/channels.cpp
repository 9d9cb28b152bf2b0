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

#include "fdmimo/channels.hpp"

#include <numbers>
#include <stdexcept>

namespace fdmimo {

CMat draw_rayleigh_channel(int rows, int cols, double pathloss_db, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("draw_rayleigh_channel: rows and cols must be >= 1");
    const double amp = std::sqrt(db_to_linear(-pathloss_db));
    CMat h(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            h(i, j) = amp * rng.complex_normal();
    return h;
}

CMat draw_ricean_si_channel(int rows, int cols, double pathloss_db, double k_factor_db, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("draw_ricean_si_channel: rows and cols must be >= 1");
    const double power = db_to_linear(-pathloss_db);
    if (k_factor_db <= -300.0) {
        // pure scattering
        const double amp = std::sqrt(power);
        CMat h(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                h(i, j) = amp * rng.complex_normal();
        return h;
    }
    const double k = db_to_linear(k_factor_db);
    const double los_amp = std::sqrt(power * k / (1.0 + k));
    const double scatter_amp = std::sqrt(power / (1.0 + k));
    const double step = 2.0 * std::numbers::pi / std::max(rows, cols);
    CMat h(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double theta = step * static_cast<double>(i) * static_cast<double>(j);
            h(i, j) = los_amp * Complex{std::cos(theta), std::sin(theta)} +
                      scatter_amp * rng.complex_normal();
        }
    return h;
}

ChannelSet draw_channel_set(const SystemConfig& cfg, const ChannelParams& params, Rng& rng) {
    validate(cfg);
    ChannelSet set;
    set.h_kk = draw_ricean_si_channel(cfg.m_k, cfg.n_k, params.pathloss_si_db, params.ricean_k_db, rng);
    set.h_qk = draw_rayleigh_channel(cfg.m_q, cfg.n_k, params.pathloss_dl_db, rng);
    set.h_km = draw_rayleigh_channel(cfg.m_k, cfg.n_m, params.pathloss_ul_db, rng);
    return set;
}

} // namespace fdmimo
