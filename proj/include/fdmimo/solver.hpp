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

#include <optional>
#include <string>

#include "fdmimo/beamforming.hpp"
#include "fdmimo/canceller.hpp"
#include "fdmimo/channels.hpp"

namespace fdmimo {

enum class DesignId {
    proposed_taps,
    proposed_aux,
    sota_full_taps,
    sota_full_aux,
    softnull,
    half_duplex_dl,
    half_duplex_ul,
};

std::string to_string(DesignId id);

/// Outcome of one design on one channel realization. fd_rate = dl_rate +
/// ul_rate always; when the residual-SI constraint cannot be met the
/// solution degrades to the better half-duplex direction (feasible = false,
/// the silent direction's rate is zero).
struct FdSolution {
    DesignId design_id = DesignId::half_duplex_dl;
    std::optional<TapCancellerRealization> tap_canceller;
    std::optional<AuxTxCancellerRealization> aux_canceller;
    std::optional<PrecoderCandidate> precoder;
    std::optional<Combiner> combiner;
    double dl_rate = 0.0;
    double ul_rate = 0.0;
    double fd_rate = 0.0;
    bool feasible = false;
    int alpha_used = 0;
};

/// Joint canceller / precoder / combiner design maximizing the FD sum rate.
/// For every canceller realization in the configured set (the single
/// norm-ordered heuristic placement by default, full enumeration capped at
/// cfg.realization_cap behind cfg.enumerate_realizations), the candidate
/// precoders are screened on the design channel h_kk + C (the programmed
/// canceller values), the canceller is impaired, and each candidate is
/// scored with the optimal combiner on the physical channel h_kk + C_hat.
/// The best (realization, candidate) pair wins; ties prefer the smaller
/// candidate index, then the smaller realization index. Falls back to half
/// duplex when no candidate meets the threshold.
FdSolution solve_op3(const ChannelSet& channels, const SystemConfig& cfg,
                     const ChannelParams& params, const ImpairmentParams& impairments, Rng& rng);

/// Half-duplex service: the better of the DL-only precoder (no SI
/// constraint) and the UL-only whitened combiner (V = 0). Ties go to DL.
FdSolution fallback_half_duplex(const ChannelSet& channels, const SystemConfig& cfg,
                                const ChannelParams& params);

/// One forced half-duplex direction (baseline designs).
FdSolution solve_half_duplex(const ChannelSet& channels, const SystemConfig& cfg,
                             const ChannelParams& params, bool downlink);

/// Full-complexity canceller baseline: one tap per TX-RX pair (or one AUX
/// chain per RX antenna), all values negating h_kk, followed by null-space
/// projection transmit beamforming on the impaired residual channel
/// (the min(m_q, n_k) least-dominant right-singular directions). The
/// residual-SI stamp is evaluated on the same impaired residual; when it
/// fails the solution falls back to half duplex.
FdSolution solve_sota_full_canceller(const ChannelSet& channels, const SystemConfig& cfg,
                                     const ChannelParams& params,
                                     const ImpairmentParams& impairments, Rng& rng,
                                     CancellerArchitecture arch);

/// Digital-only baseline: no canceller, single DL stream on the dominant
/// direction of the squeezed channel, largest alpha whose residual meets
/// the threshold on h_kk itself.
FdSolution solve_softnull(const ChannelSet& channels, const SystemConfig& cfg,
                          const ChannelParams& params);

/// Remark-2 relaxation: the residual constraint is enforced only on the
/// m_k_prime rows with the smallest residual SI; the saturated rows are
/// deactivated for uplink reception (row-submatrix channel, combiner
/// dimension reduced accordingly).
FdSolution relax_rx_subset(const ChannelSet& channels, const SystemConfig& cfg,
                           const ChannelParams& params, int m_k_prime,
                           const ImpairmentParams& impairments, Rng& rng);

} // namespace fdmimo
