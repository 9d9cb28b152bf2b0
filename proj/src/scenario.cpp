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

#include "fdmimo/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdmimo {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config: " + key + ": " + why);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            bad_key(key, "malformed number '" + value + "'");
        return v;
    } catch (const std::invalid_argument&) {
        bad_key(key, "malformed number '" + value + "'");
    } catch (const std::out_of_range&) {
        bad_key(key, "number out of range '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size())
            bad_key(key, "malformed integer '" + value + "'");
        return v;
    } catch (const std::invalid_argument&) {
        bad_key(key, "malformed integer '" + value + "'");
    } catch (const std::out_of_range&) {
        bad_key(key, "integer out of range '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    bad_key(key, "expected true/false");
}

CancellerArchitecture parse_architecture(const std::string& key, const std::string& value) {
    if (value == "taps")
        return CancellerArchitecture::taps;
    if (value == "aux")
        return CancellerArchitecture::aux_tx;
    bad_key(key, "expected taps or aux");
}

PrecoderMode parse_mode(const std::string& key, const std::string& value) {
    if (value == "auto")
        return PrecoderMode::auto_select;
    if (value == "open_loop")
        return PrecoderMode::open_loop;
    if (value == "closed_loop")
        return PrecoderMode::closed_loop;
    if (value == "mrt")
        return PrecoderMode::mrt;
    if (value == "scalar")
        return PrecoderMode::scalar;
    bad_key(key, "expected auto, open_loop, closed_loop, mrt or scalar");
}

DesignSpec parse_design(const std::string& token) {
    const auto colon = token.find(':');
    const std::string name = trim(token.substr(0, colon));
    int n = 0;
    if (colon != std::string::npos)
        n = static_cast<int>(parse_int("designs", trim(token.substr(colon + 1))));
    if (name == "proposed_taps")
        return {DesignId::proposed_taps, n};
    if (name == "proposed_aux")
        return {DesignId::proposed_aux, n};
    if (name == "sota_taps")
        return {DesignId::sota_full_taps, 0};
    if (name == "sota_aux")
        return {DesignId::sota_full_aux, 0};
    if (name == "softnull")
        return {DesignId::softnull, 0};
    if (name == "half_duplex_dl")
        return {DesignId::half_duplex_dl, 0};
    if (name == "half_duplex_ul")
        return {DesignId::half_duplex_ul, 0};
    bad_key("designs", "unknown design '" + name + "'");
}

std::string design_token(const DesignSpec& d) {
    switch (d.id) {
    case DesignId::proposed_taps: return "proposed_taps:" + std::to_string(d.n_elements);
    case DesignId::proposed_aux: return "proposed_aux:" + std::to_string(d.n_elements);
    case DesignId::sota_full_taps: return "sota_taps";
    case DesignId::sota_full_aux: return "sota_aux";
    default: return to_string(d.id);
    }
}

std::string fmt(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected key = value");

        if (key == "m_k") cfg.system.m_k = static_cast<int>(parse_int(key, value));
        else if (key == "n_k") cfg.system.n_k = static_cast<int>(parse_int(key, value));
        else if (key == "m_q") cfg.system.m_q = static_cast<int>(parse_int(key, value));
        else if (key == "n_m") cfg.system.n_m = static_cast<int>(parse_int(key, value));
        else if (key == "d_m") cfg.system.d_m = static_cast<int>(parse_int(key, value));
        else if (key == "architecture") cfg.system.architecture = parse_architecture(key, value);
        else if (key == "n_elements") cfg.system.n_elements = static_cast<int>(parse_int(key, value));
        else if (key == "n_taps") {
            cfg.system.architecture = CancellerArchitecture::taps;
            cfg.system.n_elements = static_cast<int>(parse_int(key, value));
        } else if (key == "n_aux") {
            cfg.system.architecture = CancellerArchitecture::aux_tx;
            cfg.system.n_elements = static_cast<int>(parse_int(key, value));
        }
        else if (key == "alpha_max") cfg.system.alpha_max = static_cast<int>(parse_int(key, value));
        else if (key == "precoder_mode") cfg.system.precoder_mode = parse_mode(key, value);
        else if (key == "enumerate_realizations") cfg.system.enumerate_realizations = parse_bool(key, value);
        else if (key == "realization_cap") cfg.system.realization_cap = static_cast<int>(parse_int(key, value));
        else if (key == "lambda_a_dbm") {
            cfg.system.lambda_a_dbm = parse_double(key, value);
            cfg.sweep.lambda_a_dbm = cfg.system.lambda_a_dbm;
        }
        else if (key == "pathloss_dl_db") cfg.channels.pathloss_dl_db = parse_double(key, value);
        else if (key == "pathloss_ul_db") cfg.channels.pathloss_ul_db = parse_double(key, value);
        else if (key == "pathloss_si_db") cfg.channels.pathloss_si_db = parse_double(key, value);
        else if (key == "ricean_k_db") cfg.channels.ricean_k_db = parse_double(key, value);
        else if (key == "noise_floor_k_dbm") cfg.channels.noise_floor_k_dbm = parse_double(key, value);
        else if (key == "noise_floor_q_dbm") cfg.channels.noise_floor_q_dbm = parse_double(key, value);
        else if (key == "tap_phase_err_max_rad") cfg.impairments.tap_phase_err_max_rad = parse_double(key, value);
        else if (key == "tap_mag_err_max_db") cfg.impairments.tap_mag_err_max_db = parse_double(key, value);
        else if (key == "aux_phase_jitter_std_rad") cfg.impairments.aux_phase_jitter_std_rad = parse_double(key, value);
        else if (key == "p_k_grid_dbm") {
            cfg.sweep.p_k_grid_dbm.clear();
            for (const auto& tok : split(value, ','))
                cfg.sweep.p_k_grid_dbm.push_back(parse_double(key, tok));
        }
        else if (key == "p_m_offset_db") cfg.sweep.p_m_offset_db = parse_double(key, value);
        else if (key == "n_trials") cfg.sweep.n_trials = static_cast<int>(parse_int(key, value));
        else if (key == "master_seed") cfg.sweep.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "threads") cfg.sweep.threads = static_cast<int>(parse_int(key, value));
        else if (key == "designs") {
            cfg.sweep.designs.clear();
            for (const auto& tok : split(value, ','))
                cfg.sweep.designs.push_back(parse_design(tok));
        }
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    validate_run_config(cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "': " +
                                 std::strerror(errno));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_run_config(const RunConfig& cfg) {
    const SystemConfig& s = cfg.system;
    if (s.m_k < 1) bad_key("m_k", "must be >= 1");
    if (s.n_k < 1) bad_key("n_k", "must be >= 1");
    if (s.m_q < 1) bad_key("m_q", "must be >= 1");
    if (s.n_m < 1) bad_key("n_m", "must be >= 1");
    if (s.d_m < 0) bad_key("d_m", "must be >= 0");
    if (s.d_m > std::min(s.m_k, s.n_m))
        bad_key("d_m", "value " + std::to_string(s.d_m) + " exceeds min(m_k, n_m) = " +
                           std::to_string(std::min(s.m_k, s.n_m)));
    const char* budget_key =
        s.architecture == CancellerArchitecture::taps ? "n_taps" : "n_aux";
    const int budget = s.architecture == CancellerArchitecture::taps ? s.m_k * s.n_k : s.m_k;
    if (s.n_elements < 0 || s.n_elements > budget)
        bad_key(budget_key, "value " + std::to_string(s.n_elements) +
                                " outside the canceller budget [0, " + std::to_string(budget) + "]");
    if (s.alpha_max < 0 || s.alpha_max > s.n_k)
        bad_key("alpha_max", "must lie in [0, n_k]");
    if (s.realization_cap < 1) bad_key("realization_cap", "must be >= 1");
    if (cfg.sweep.n_trials < 1) bad_key("n_trials", "must be >= 1");
    if (cfg.sweep.p_k_grid_dbm.empty()) bad_key("p_k_grid_dbm", "must not be empty");
    if (cfg.sweep.threads < 0) bad_key("threads", "must be >= 0");
    if (cfg.channels.pathloss_dl_db < 0) bad_key("pathloss_dl_db", "must be >= 0");
    if (cfg.channels.pathloss_ul_db < 0) bad_key("pathloss_ul_db", "must be >= 0");
    if (cfg.channels.pathloss_si_db < 0) bad_key("pathloss_si_db", "must be >= 0");
    if (!std::isfinite(cfg.channels.ricean_k_db)) bad_key("ricean_k_db", "must be finite");
    if (cfg.impairments.tap_phase_err_max_rad < 0) bad_key("tap_phase_err_max_rad", "must be >= 0");
    if (cfg.impairments.tap_mag_err_max_db < 0) bad_key("tap_mag_err_max_db", "must be >= 0");
    if (cfg.impairments.aux_phase_jitter_std_rad < 0)
        bad_key("aux_phase_jitter_std_rad", "must be >= 0");
    for (const auto& d : cfg.sweep.designs) {
        if (d.id == DesignId::proposed_taps && (d.n_elements < 0 || d.n_elements > s.m_k * s.n_k))
            bad_key("designs", "proposed_taps:" + std::to_string(d.n_elements) +
                                   " outside [0, m_k*n_k]");
        if (d.id == DesignId::proposed_aux && (d.n_elements < 0 || d.n_elements > s.m_k))
            bad_key("designs", "proposed_aux:" + std::to_string(d.n_elements) + " outside [0, m_k]");
    }
}

std::string format_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "m_k = " << cfg.system.m_k << "\n";
    out << "n_k = " << cfg.system.n_k << "\n";
    out << "m_q = " << cfg.system.m_q << "\n";
    out << "n_m = " << cfg.system.n_m << "\n";
    out << "d_m = " << cfg.system.d_m << "\n";
    out << "architecture = " << to_string(cfg.system.architecture) << "\n";
    out << "n_elements = " << cfg.system.n_elements << "\n";
    out << "alpha_max = " << cfg.system.alpha_max << "\n";
    out << "precoder_mode = " << to_string(cfg.system.precoder_mode) << "\n";
    out << "enumerate_realizations = " << (cfg.system.enumerate_realizations ? "true" : "false")
        << "\n";
    out << "realization_cap = " << cfg.system.realization_cap << "\n";
    out << "lambda_a_dbm = " << fmt(cfg.sweep.lambda_a_dbm) << "\n";
    out << "pathloss_dl_db = " << fmt(cfg.channels.pathloss_dl_db) << "\n";
    out << "pathloss_ul_db = " << fmt(cfg.channels.pathloss_ul_db) << "\n";
    out << "pathloss_si_db = " << fmt(cfg.channels.pathloss_si_db) << "\n";
    out << "ricean_k_db = " << fmt(cfg.channels.ricean_k_db) << "\n";
    out << "noise_floor_k_dbm = " << fmt(cfg.channels.noise_floor_k_dbm) << "\n";
    out << "noise_floor_q_dbm = " << fmt(cfg.channels.noise_floor_q_dbm) << "\n";
    out << "tap_phase_err_max_rad = " << fmt(cfg.impairments.tap_phase_err_max_rad) << "\n";
    out << "tap_mag_err_max_db = " << fmt(cfg.impairments.tap_mag_err_max_db) << "\n";
    out << "aux_phase_jitter_std_rad = " << fmt(cfg.impairments.aux_phase_jitter_std_rad) << "\n";
    out << "p_k_grid_dbm = ";
    for (std::size_t i = 0; i < cfg.sweep.p_k_grid_dbm.size(); ++i)
        out << (i ? "," : "") << fmt(cfg.sweep.p_k_grid_dbm[i]);
    out << "\n";
    out << "p_m_offset_db = " << fmt(cfg.sweep.p_m_offset_db) << "\n";
    out << "n_trials = " << cfg.sweep.n_trials << "\n";
    out << "master_seed = " << cfg.sweep.master_seed << "\n";
    out << "threads = " << cfg.sweep.threads << "\n";
    if (!cfg.sweep.designs.empty()) {
        out << "designs = ";
        for (std::size_t i = 0; i < cfg.sweep.designs.size(); ++i)
            out << (i ? "," : "") << design_token(cfg.sweep.designs[i]);
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> preset_names() {
    return {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13",
            "custom"};
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    auto taps = [](int n) { return DesignSpec{DesignId::proposed_taps, n}; };
    auto aux = [](int n) { return DesignSpec{DesignId::proposed_aux, n}; };
    const DesignSpec sota_taps{DesignId::sota_full_taps, 0};
    const DesignSpec sota_aux{DesignId::sota_full_aux, 0};
    const DesignSpec softnull{DesignId::softnull, 0};

    auto remote = [&](int antennas) {
        cfg.system.m_q = antennas;
        cfg.system.n_m = antennas;
    };

    if (name == "fig4") {
        remote(1);
        cfg.system.architecture = CancellerArchitecture::taps;
        cfg.sweep.designs = {taps(4), taps(8), sota_taps, softnull};
    } else if (name == "fig5") {
        remote(4);
        cfg.system.architecture = CancellerArchitecture::taps;
        cfg.sweep.designs = {taps(4), taps(8), sota_taps, softnull};
    } else if (name == "fig6") {
        remote(1);
        cfg.system.architecture = CancellerArchitecture::aux_tx;
        cfg.sweep.designs = {aux(2), aux(3), sota_aux, softnull};
    } else if (name == "fig7") {
        remote(4);
        cfg.system.architecture = CancellerArchitecture::aux_tx;
        cfg.sweep.designs = {aux(2), aux(3), sota_aux, softnull};
    } else if (name == "fig8") {
        remote(1);
        cfg.system.architecture = CancellerArchitecture::taps;
        cfg.sweep.designs = {taps(4), taps(8)};
    } else if (name == "fig9") {
        remote(1);
        cfg.system.architecture = CancellerArchitecture::aux_tx;
        cfg.sweep.designs = {aux(2), aux(3)};
    } else if (name == "fig10") {
        remote(1);
        cfg.sweep.designs = {taps(4), taps(8), aux(2), aux(3), sota_taps};
    } else if (name == "fig11") {
        remote(4);
        cfg.sweep.designs = {taps(4), taps(8), aux(2), aux(3), sota_taps};
    } else if (name == "fig12") {
        remote(1);
        cfg.sweep.designs = {taps(8), aux(3), sota_taps};
    } else if (name == "fig13") {
        remote(4);
        cfg.sweep.designs = {taps(8), aux(3), sota_taps};
    } else if (name == "custom") {
        if (cfg.sweep.designs.empty()) {
            const bool is_taps = cfg.system.architecture == CancellerArchitecture::taps;
            cfg.sweep.designs = {
                DesignSpec{is_taps ? DesignId::proposed_taps : DesignId::proposed_aux,
                           cfg.system.n_elements},
                is_taps ? sota_taps : sota_aux, softnull};
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    validate_run_config(cfg);
}

std::string format_csv(const SweepResult& result, const RunConfig& cfg) {
    std::ostringstream out;
    out << "design,p_k_dbm,p_m_dbm,prob_constraint_met,avg_alpha,mean_dl,mean_ul,mean_fd,"
           "mean_fd_conditioned,n_feasible,n_trials,seed\n";
    for (std::size_t d = 0; d < result.design_labels.size(); ++d) {
        for (std::size_t p = 0; p < result.p_k_grid_dbm.size(); ++p) {
            const CellStats& c = result.cells[d][p];
            out << result.design_labels[d] << ',' << fmt(result.p_k_grid_dbm[p]) << ','
                << fmt(result.p_k_grid_dbm[p] + cfg.sweep.p_m_offset_db) << ','
                << fmt(c.prob_constraint_met) << ',' << fmt(c.avg_alpha) << ',' << fmt(c.mean_dl)
                << ',' << fmt(c.mean_ul) << ',' << fmt(c.mean_fd) << ','
                << fmt(c.mean_fd_conditioned) << ',' << c.n_feasible << ',' << c.n_trials << ','
                << cfg.sweep.master_seed << "\n";
        }
    }
    return out.str();
}

SweepResult run_scenario(const RunConfig& cfg, const std::string& out_dir) {
    validate_run_config(cfg);
    if (cfg.sweep.designs.empty())
        bad_key("designs", "must not be empty (pick a preset or list designs)");

    const SweepResult result =
        run_sweep(cfg.sweep, cfg.system, cfg.channels, cfg.impairments);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + out_dir +
                                 "': " + ec.message());

    auto write_file = [&](const std::string& name, const std::string& body) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + path + "': " + std::strerror(errno));
        out << body;
        if (!out)
            throw std::runtime_error("write failed for '" + path + "': " + std::strerror(errno));
    };

    write_file("results.csv", format_csv(result, cfg));
    std::string meta = "# fdmimo sweep metadata (version 0.1.0)\n"
                       "# feed this file back via --config to reproduce the run\n" +
                       format_config(cfg);
    write_file("meta.txt", meta);
    return result;
}

} // namespace fdmimo
