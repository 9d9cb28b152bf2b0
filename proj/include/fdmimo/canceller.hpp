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

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "fdmimo/config.hpp"
#include "fdmimo/rng.hpp"
#include "fdmimo/types.hpp"

namespace fdmimo {

/// Hardware error model parameters. Defaults correspond to 0.02 dB / 0.13
/// degree tap quantization steps and the measured oscillator jitter of an
/// AUX TX chain.
struct ImpairmentParams {
    double tap_phase_err_max_rad = 0.065 * std::numbers::pi / 180.0;
    double tap_mag_err_max_db = 0.01;
    double aux_phase_jitter_std_rad = 0.717 * std::numbers::pi / 180.0;
};

/// Multi-tap canceller: C = L3 * L2 * L1 with binary routing matrices L1
/// (N-to-1 MUX per tap input, unit row sums) and L3 (1-to-M DEMUX per tap
/// output, unit column sums), and diagonal L2 holding the complex tap values.
struct TapCancellerRealization {
    RMat l1;         ///< n_taps x n_k, binary
    CMat l2;         ///< n_taps x n_taps, diagonal
    RMat l3;         ///< m_k x n_taps, binary
    CMat c_ideal;    ///< m_k x n_k, equals l3*l2*l1
    CMat c_impaired; ///< empty until impair_tap_canceller fills it
    std::vector<std::pair<int, int>> positions; ///< (row, col) per tap, in tap order
};

/// Multi-AUX-TX canceller: C = L5 * L4 with the digital-domain transform L4
/// and the binary DEMUX routing L5 (unit column sums). C has exactly
/// m_k - n_aux all-zero rows.
struct AuxTxCancellerRealization {
    CMat l4;         ///< n_aux x n_k
    RMat l5;         ///< m_k x n_aux, binary
    CMat c_ideal;    ///< m_k x n_k, equals l5*l4
    CMat c_impaired; ///< empty until impair_aux_canceller fills it
    std::vector<int> rows; ///< targeted RX row per AUX chain, in chain order
};

/// Row-by-row tap placement: rows of h_kk are filled in descending Euclidean
/// norm order, and within a row taps go to the largest-magnitude entries
/// first. Each tap value is the negative of the targeted channel entry, so
/// the ideal effective channel h_kk + c_ideal is exactly zero there.
/// Ties break toward the lowest index. 0 <= n_taps <= m_k*n_k.
TapCancellerRealization realize_tap_canceller_rowwise(const CMat& h_kk, int n_taps);

/// Same construction for an explicit placement (enumeration support).
TapCancellerRealization realize_tap_canceller_at(const CMat& h_kk,
                                                 const std::vector<std::pair<int, int>>& positions);

/// Connects AUX chains to the n_aux rows of h_kk with the largest Euclidean
/// norms (lowest index first on ties); row i of L4 is the negated selected
/// row, so the ideal effective channel is zero on every selected row.
/// 0 <= n_aux <= m_k.
AuxTxCancellerRealization realize_aux_canceller_largest_rows(const CMat& h_kk, int n_aux);

/// Same construction for an explicit row selection (enumeration support).
AuxTxCancellerRealization realize_aux_canceller_rows(const CMat& h_kk, const std::vector<int>& rows);

/// Number of distinct MUX/DEMUX placements: C(m_k*n_k, n) for taps,
/// C(m_k, n) for AUX chains. Throws std::overflow_error if the count does
/// not fit in 64 bits.
std::uint64_t enumerate_realization_count(CancellerArchitecture arch, int m_k, int n_k, int n);

/// Applies per-tap phase/magnitude errors: each nonzero entry is multiplied
/// by exp(j*a) * 10^(b/20) with a, b uniform on the configured symmetric
/// intervals, IID per tap in tap order. Zero entries stay zero.
TapCancellerRealization impair_tap_canceller(const TapCancellerRealization& real,
                                             const ImpairmentParams& params, Rng& rng);

/// Phase-noise mismatch matrix between AUX and TX oscillators:
/// phi(i,j) = exp(j*phi_aux[i]) - exp(j*phi_tx[j]) + 1.
CMat aux_phase_mismatch(const RVec& phi_aux, const RVec& phi_tx);

/// Applies oscillator phase noise: draws phi_aux (per AUX chain) then phi_tx
/// (per TX chain), IID N(0, sigma^2), and sets c_impaired = l5 * (phi .* l4).
AuxTxCancellerRealization impair_aux_canceller(const AuxTxCancellerRealization& real,
                                               const ImpairmentParams& params, Rng& rng);

/// Canceller hardware saved relative to the full-complexity architectures:
/// 100*(1 - n/(m_k*n_k)) % for taps, 100*(1 - n/m_k) % for AUX chains.
double hardware_reduction_percent(CancellerArchitecture arch, int n, int m_k, int n_k);

} // namespace fdmimo
