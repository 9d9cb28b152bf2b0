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

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "fdmimo/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for full-duplex MIMO designs with "
                 "reduced-complexity analog self-interference cancellation"};

    std::string preset = "custom";
    std::string config_path;
    std::string out_dir = "out";
    std::string architecture;
    int trials = -1;
    long long seed = -1;
    int n_elements = -1;
    int threads = -1;
    bool enumerate = false;

    app.add_option("--preset", preset, "Scenario preset (fig4..fig13 or custom)")
        ->check(CLI::IsMember(fdmimo::preset_names()));
    app.add_option("--config", config_path, "Key = value configuration file");
    app.add_option("--out", out_dir, "Output directory for results.csv and meta.txt");
    app.add_option("--trials", trials, "Monte Carlo trials per power point");
    app.add_option("--seed", seed, "Master seed of the trial substreams");
    app.add_option("--architecture", architecture, "Canceller architecture for custom runs")
        ->check(CLI::IsMember(std::vector<std::string>{"taps", "aux"}));
    app.add_option("--n-elements", n_elements, "Canceller taps / AUX TX chains for custom runs");
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_flag("--enumerate-realizations", enumerate,
                 "Search all MUX/DEMUX placements instead of the norm-ordered heuristic");

    CLI11_PARSE(app, argc, argv);

    try {
        fdmimo::RunConfig cfg;
        if (!config_path.empty())
            cfg = fdmimo::parse_config(config_path);
        else
            cfg.sweep.n_trials = 200; // desk-scale default; full reproduction uses --trials 1000

        if (!architecture.empty()) {
            cfg.system.architecture = architecture == "taps"
                                          ? fdmimo::CancellerArchitecture::taps
                                          : fdmimo::CancellerArchitecture::aux_tx;
            cfg.sweep.designs.clear(); // rebuild the custom design list
        }
        if (n_elements >= 0) {
            cfg.system.n_elements = n_elements;
            cfg.sweep.designs.clear();
        }
        fdmimo::apply_preset(cfg, preset);

        if (trials >= 1)
            cfg.sweep.n_trials = trials;
        if (seed >= 0)
            cfg.sweep.master_seed = static_cast<std::uint64_t>(seed);
        if (threads >= 0)
            cfg.sweep.threads = threads;
        if (enumerate)
            cfg.system.enumerate_realizations = true;
        fdmimo::validate_run_config(cfg);

        const fdmimo::SweepResult result = fdmimo::run_scenario(cfg, out_dir);
        std::printf("wrote %s/results.csv (%zu designs x %zu power points, %d trials)\n",
                    out_dir.c_str(), result.design_labels.size(), result.p_k_grid_dbm.size(),
                    cfg.sweep.n_trials);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
