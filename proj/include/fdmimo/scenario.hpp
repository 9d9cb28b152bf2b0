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

#include <string>
#include <vector>

#include "fdmimo/montecarlo.hpp"

namespace fdmimo {

/// Everything one run needs. Serializes to / parses from key = value text.
struct RunConfig {
    SystemConfig system;
    SweepSpec sweep;
    ChannelParams channels;
    ImpairmentParams impairments;
};

/// Parses key = value configuration text ('#' starts a comment). Unknown
/// keys, malformed values and inconsistent dimensions throw
/// std::invalid_argument naming the offending key. Missing keys keep their
/// defaults. An empty document yields the default 4x4 node scenario.
RunConfig parse_config_text(const std::string& text);

/// Same, reading the file at path.
RunConfig parse_config(const std::string& path);

/// Cross-field validation shared by the parser and the CLI; throws
/// std::invalid_argument naming the offending key.
void validate_run_config(const RunConfig& cfg);

/// Serializes a RunConfig back to config syntax; parse_config_text on the
/// result reproduces the run.
std::string format_config(const RunConfig& cfg);

std::vector<std::string> preset_names();

/// Applies one of the named scenario presets (fig4 ... fig13, custom) on top
/// of cfg: remote-node antenna counts, canceller architecture and the design
/// list of the corresponding experiment. "custom" builds the design list
/// from cfg.system.architecture / n_elements unless the config already
/// supplied one. Throws std::invalid_argument for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

/// CSV with one row per design x power point. Columns: design, p_k_dbm,
/// p_m_dbm, prob_constraint_met, avg_alpha, mean_dl, mean_ul, mean_fd,
/// mean_fd_conditioned, n_feasible, n_trials, seed.
std::string format_csv(const SweepResult& result, const RunConfig& cfg);

/// Runs the sweep described by cfg and writes results.csv and meta.txt under
/// out_dir (created if missing). Returns the sweep result. IO failures throw
/// std::runtime_error with the system message.
SweepResult run_scenario(const RunConfig& cfg, const std::string& out_dir);

} // namespace fdmimo
