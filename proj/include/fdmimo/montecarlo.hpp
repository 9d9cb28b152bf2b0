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
#include <string>
#include <vector>

#include "fdmimo/solver.hpp"

namespace fdmimo {

/// One design entry of a sweep; n_elements only matters for the proposed
/// designs (the baselines fix their own canceller sizes).
struct DesignSpec {
    DesignId id = DesignId::proposed_taps;
    int n_elements = 0;

    std::string label(const SystemConfig& cfg) const;
};

/// Power sweep description.
struct SweepSpec {
    std::vector<double> p_k_grid_dbm = {10, 15, 20, 25, 30, 35, 40};
    double p_m_offset_db = -20.0; ///< p_m = p_k + offset
    int n_trials = 1000;
    std::vector<DesignSpec> designs;
    std::uint64_t master_seed = 1;
    double lambda_a_dbm = -60.0;
    int threads = 0; ///< 0 resolves to hardware concurrency
};

/// Aggregated statistics for one (design, power) cell. Rate means cover all
/// trials with infeasible trials contributing their half-duplex fallback
/// rates; mean_fd_conditioned averages feasible trials only (NaN when none,
/// likewise avg_alpha).
struct CellStats {
    double prob_constraint_met = 0.0;
    double avg_alpha = 0.0;
    double mean_dl = 0.0;
    double mean_ul = 0.0;
    double mean_fd = 0.0;
    double mean_fd_conditioned = 0.0;
    int n_feasible = 0;
    int n_trials = 0;
};

struct SweepResult {
    std::vector<std::string> design_labels;
    std::vector<double> p_k_grid_dbm;
    std::vector<std::vector<CellStats>> cells; ///< [design][power]
};

/// Per-trial record kept so reductions are order-fixed.
struct TrialCell {
    bool feasible = false;
    int alpha = 0;
    double dl = 0.0, ul = 0.0, fd = 0.0;
};

/// Runs one design at one operating point (design dispatch used by sweeps
/// and by the scenario front end).
FdSolution solve_design(const DesignSpec& design, const ChannelSet& channels, SystemConfig cfg,
                        const ChannelParams& params, const ImpairmentParams& impairments,
                        Rng& rng);

/// Seeded parallel Monte Carlo sweep. Trial t draws its channel set from
/// substream (master_seed, t, 0); every (design, power) solve of that trial
/// starts a fresh impairment substream (master_seed, t, 1), so impairment
/// draws are common across designs and power points within a trial. One
/// channel realization is shared by all designs and power points of a trial.
/// Results are reduced in trial order and are bit-identical for any thread
/// count.
SweepResult run_sweep(const SweepSpec& spec, const SystemConfig& cfg, const ChannelParams& params,
                      const ImpairmentParams& impairments);

/// Mean chosen alpha per (design, power point), feasible trials only.
std::vector<std::vector<double>> summarize_alpha(const SweepResult& result);

} // namespace fdmimo
