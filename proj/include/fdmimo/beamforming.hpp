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

#include <vector>

#include "fdmimo/config.hpp"
#include "fdmimo/types.hpp"

namespace fdmimo {

/// One feasible (alpha, F, G) precoder produced by the candidate sweep.
/// v = f * g; columns of f are orthonormal (a right-singular subspace of the
/// channel the candidate was screened on), and every row of that screening
/// channel times v meets the residual-SI threshold.
struct PrecoderCandidate {
    int realization_index = 0; ///< canceller realization the candidate belongs to (1-based)
    int candidate_index = 0;   ///< emission order m = 1, 2, ... (descending alpha)
    int alpha = 0;             ///< effective TX antennas
    CMat f;                    ///< n_k x alpha
    CMat g;                    ///< alpha x d_k
    CMat v;                    ///< n_k x d_k
    double dl_rate = 0.0;      ///< bits/s/Hz
};

/// Uplink combining filter; every row has unit Euclidean norm.
struct Combiner {
    CMat u; ///< d_m x m_k
};

/// Downlink rate log2 det(I + H V V^H H^H / sigma_q_sq). Throws on a
/// non-finite result.
double dl_rate(const CMat& v, const CMat& h_qk, double sigma_q_sq);

/// Uplink rate after combining,
///   log2 det(I + U H_km V_m V_m^H H_km^H U^H Q^{-1}),
/// with the interference-plus-noise covariance
///   Q = U C_eff V V^H C_eff^H U^H + sigma_k_sq U U^H.
/// Throws if Q is singular.
double ul_rate(const CMat& u, const CMat& c_eff, const CMat& v, const CMat& h_km, const CMat& v_m,
               double sigma_k_sq);

/// Water-filling over parallel channels with per-channel gains g_i:
/// p_i = max(0, mu - noise_power/g_i^2), with mu bisected until the powers
/// sum to total_power (tolerance 1e-12). Zero-gain channels get zero power;
/// throws if every gain is zero.
RVec waterfilling(const RVec& gains, double total_power, double noise_power);

/// Inner precoder G for the effective downlink channel h_eff (m_q x alpha):
///   open_loop   - equal power on the first min(m_q, alpha) antennas
///   closed_loop - right-singular-vector beamforming with water-filled powers
///                 (falls back to open_loop when all gains vanish)
///   mrt         - conjugate beamforming, requires m_q == 1 and alpha >= 2
///   scalar      - sqrt(p_k), requires alpha == 1
/// noise_power only matters for closed_loop. trace(G G^H) <= p_k always.
CMat sub_precoder(const CMat& h_eff, double p_k, PrecoderMode mode, double noise_power = 1.0);

/// Equal-power uplink precoder of the remote node: sqrt(p_m/d_m) times the
/// first d_m columns of the n_m x n_m identity.
CMat uplink_precoder(int n_m, int d_m, double p_m);

/// Candidate sweep for a given canceller. For alpha = alpha_max down to 2,
/// F spans the alpha least-dominant right-singular directions of
/// c_eff_design, G comes from sub_precoder on h_qk*F, and the candidate is
/// kept iff every row of c_eff_design*F*G has squared norm <= lambda_a.
/// The alpha = 1 step uses the single least-dominant direction with
/// G = sqrt(p_k). Candidates are numbered m = 1, 2, ... in emission order;
/// an empty list signals infeasibility. mode applies to the alpha >= 2
/// steps; sigma_q_sq feeds closed-loop water-filling and the dl_rate stamp.
std::vector<PrecoderCandidate> algorithm1_precoders(const CMat& c_eff_design, const CMat& h_qk,
                                                    double p_k, double lambda_a, int alpha_max,
                                                    PrecoderMode mode, double sigma_q_sq);

/// Rate-optimal unit-row-norm combiner: eigendecompose the pre-combining
/// interference-plus-noise covariance B = C_eff V V^H C_eff^H + sigma_k_sq I
/// as E Lambda E^H, take W = the d_m dominant left singular vectors of the
/// whitened channel Lambda^{-1/2} E^H H_km, and normalize the rows of
/// W^H Lambda^{-1/2} E^H. Throws if d_m exceeds the whitened channel rank.
Combiner optimal_combiner(const CMat& c_eff, const CMat& v, const CMat& h_km, double sigma_k_sq,
                          int d_m);

} // namespace fdmimo
