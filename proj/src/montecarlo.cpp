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

#include "fdmimo/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fdmimo {

namespace {

// substream tags
constexpr std::uint64_t kChannelStream = 0;
constexpr std::uint64_t kImpairmentStream = 1;

} // namespace

std::string DesignSpec::label(const SystemConfig& cfg) const {
    switch (id) {
    case DesignId::proposed_taps: return "proposed_taps_N" + std::to_string(n_elements);
    case DesignId::proposed_aux: return "proposed_aux_N" + std::to_string(n_elements);
    case DesignId::sota_full_taps: return "sota_taps_N" + std::to_string(cfg.m_k * cfg.n_k);
    case DesignId::sota_full_aux: return "sota_aux_N" + std::to_string(cfg.m_k);
    default: return to_string(id);
    }
}

FdSolution solve_design(const DesignSpec& design, const ChannelSet& channels, SystemConfig cfg,
                        const ChannelParams& params, const ImpairmentParams& impairments,
                        Rng& rng) {
    switch (design.id) {
    case DesignId::proposed_taps:
        cfg.architecture = CancellerArchitecture::taps;
        cfg.n_elements = design.n_elements;
        return solve_op3(channels, cfg, params, impairments, rng);
    case DesignId::proposed_aux:
        cfg.architecture = CancellerArchitecture::aux_tx;
        cfg.n_elements = design.n_elements;
        return solve_op3(channels, cfg, params, impairments, rng);
    case DesignId::sota_full_taps:
        return solve_sota_full_canceller(channels, cfg, params, impairments, rng,
                                         CancellerArchitecture::taps);
    case DesignId::sota_full_aux:
        return solve_sota_full_canceller(channels, cfg, params, impairments, rng,
                                         CancellerArchitecture::aux_tx);
    case DesignId::softnull:
        return solve_softnull(channels, cfg, params);
    case DesignId::half_duplex_dl:
        return solve_half_duplex(channels, cfg, params, true);
    case DesignId::half_duplex_ul:
        return solve_half_duplex(channels, cfg, params, false);
    }
    throw std::invalid_argument("solve_design: unknown design id");
}

SweepResult run_sweep(const SweepSpec& spec, const SystemConfig& cfg, const ChannelParams& params,
                      const ImpairmentParams& impairments) {
    if (spec.n_trials < 1)
        throw std::invalid_argument("run_sweep: n_trials must be >= 1");
    if (spec.p_k_grid_dbm.empty())
        throw std::invalid_argument("run_sweep: p_k_grid_dbm must not be empty");
    if (spec.designs.empty())
        throw std::invalid_argument("run_sweep: designs must not be empty");
    validate(cfg);

    const std::size_t n_designs = spec.designs.size();
    const std::size_t n_powers = spec.p_k_grid_dbm.size();
    const std::size_t cells_per_trial = n_designs * n_powers;
    std::vector<TrialCell> records(static_cast<std::size_t>(spec.n_trials) * cells_per_trial);

    auto run_trial = [&](int t) {
        Rng channel_rng(spec.master_seed, static_cast<std::uint64_t>(t), kChannelStream);
        const ChannelSet channels = draw_channel_set(cfg, params, channel_rng);
        for (std::size_t d = 0; d < n_designs; ++d) {
            for (std::size_t p = 0; p < n_powers; ++p) {
                SystemConfig point = cfg;
                point.p_k_dbm = spec.p_k_grid_dbm[p];
                point.p_m_dbm = spec.p_k_grid_dbm[p] + spec.p_m_offset_db;
                point.lambda_a_dbm = spec.lambda_a_dbm;
                // every solve restarts the trial's impairment stream: draws
                // are common across designs and power points
                Rng imp_rng(spec.master_seed, static_cast<std::uint64_t>(t), kImpairmentStream);
                const FdSolution sol =
                    solve_design(spec.designs[d], channels, point, params, impairments, imp_rng);
                TrialCell& cell =
                    records[static_cast<std::size_t>(t) * cells_per_trial + d * n_powers + p];
                cell.feasible = sol.feasible;
                cell.alpha = sol.alpha_used;
                cell.dl = sol.dl_rate;
                cell.ul = sol.ul_rate;
                cell.fd = sol.fd_rate;
            }
        }
    };

    int n_threads = spec.threads > 0 ? spec.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, spec.n_trials);
    if (n_threads == 1) {
        for (int t = 0; t < spec.n_trials; ++t)
            run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < spec.n_trials; t = next.fetch_add(1))
                    run_trial(t);
            });
        for (auto& th : pool)
            th.join();
    }

    // reduction in trial order, independent of the execution schedule
    SweepResult result;
    result.p_k_grid_dbm = spec.p_k_grid_dbm;
    for (const auto& d : spec.designs)
        result.design_labels.push_back(d.label(cfg));
    result.cells.assign(n_designs, std::vector<CellStats>(n_powers));
    for (std::size_t d = 0; d < n_designs; ++d) {
        for (std::size_t p = 0; p < n_powers; ++p) {
            CellStats& stats = result.cells[d][p];
            stats.n_trials = spec.n_trials;
            double sum_dl = 0, sum_ul = 0, sum_fd = 0, sum_fd_feas = 0, sum_alpha = 0;
            for (int t = 0; t < spec.n_trials; ++t) {
                const TrialCell& cell =
                    records[static_cast<std::size_t>(t) * cells_per_trial + d * n_powers + p];
                sum_dl += cell.dl;
                sum_ul += cell.ul;
                sum_fd += cell.fd;
                if (cell.feasible) {
                    ++stats.n_feasible;
                    sum_fd_feas += cell.fd;
                    sum_alpha += cell.alpha;
                }
            }
            const double n = spec.n_trials;
            stats.prob_constraint_met = stats.n_feasible / n;
            stats.mean_dl = sum_dl / n;
            stats.mean_ul = sum_ul / n;
            stats.mean_fd = sum_fd / n;
            stats.avg_alpha = stats.n_feasible > 0
                                  ? sum_alpha / stats.n_feasible
                                  : std::numeric_limits<double>::quiet_NaN();
            stats.mean_fd_conditioned = stats.n_feasible > 0
                                            ? sum_fd_feas / stats.n_feasible
                                            : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return result;
}

std::vector<std::vector<double>> summarize_alpha(const SweepResult& result) {
    std::vector<std::vector<double>> table;
    table.reserve(result.cells.size());
    for (const auto& row : result.cells) {
        std::vector<double> alphas;
        alphas.reserve(row.size());
        for (const auto& cell : row)
            alphas.push_back(cell.avg_alpha);
        table.push_back(std::move(alphas));
    }
    return table;
}

} // namespace fdmimo
