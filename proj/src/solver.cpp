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

#include "fdmimo/solver.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fdmimo {

namespace {

struct LinearPoint {
    double p_k, p_m, lambda_a, sigma_k_sq, sigma_q_sq;
};

LinearPoint linearize(const SystemConfig& cfg, const ChannelParams& params) {
    return {dbm_to_watt(cfg.p_k_dbm), dbm_to_watt(cfg.p_m_dbm), dbm_to_watt(cfg.lambda_a_dbm),
            dbm_to_watt(params.noise_floor_k_dbm), dbm_to_watt(params.noise_floor_q_dbm)};
}

// k-combinations of {0, ..., slots-1} in lexicographic order, at most cap.
std::vector<std::vector<int>> combinations_capped(int slots, int k, int cap) {
    std::vector<std::vector<int>> out;
    if (k > slots)
        return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (static_cast<int>(out.size()) < cap) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == slots - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::vector<TapCancellerRealization> tap_realization_set(const CMat& h_kk,
                                                         const SystemConfig& cfg) {
    if (!cfg.enumerate_realizations)
        return {realize_tap_canceller_rowwise(h_kk, cfg.n_elements)};
    const int n_k = static_cast<int>(h_kk.cols());
    const int slots = static_cast<int>(h_kk.rows()) * n_k;
    std::vector<TapCancellerRealization> set;
    for (const auto& combo : combinations_capped(slots, cfg.n_elements, cfg.realization_cap)) {
        std::vector<std::pair<int, int>> pos;
        pos.reserve(combo.size());
        for (int flat : combo)
            pos.emplace_back(flat / n_k, flat % n_k);
        set.push_back(realize_tap_canceller_at(h_kk, pos));
    }
    return set;
}

std::vector<AuxTxCancellerRealization> aux_realization_set(const CMat& h_kk,
                                                           const SystemConfig& cfg) {
    if (!cfg.enumerate_realizations)
        return {realize_aux_canceller_largest_rows(h_kk, cfg.n_elements)};
    std::vector<AuxTxCancellerRealization> set;
    const int m_k = static_cast<int>(h_kk.rows());
    for (const auto& combo : combinations_capped(m_k, cfg.n_elements, cfg.realization_cap))
        set.push_back(realize_aux_canceller_rows(h_kk, combo));
    return set;
}

// Downlink-only precoder on the raw channel (no SI constraint).
CMat downlink_only_precoder(const CMat& h_qk, double p_k, const SystemConfig& cfg,
                            double sigma_q_sq) {
    PrecoderMode mode = resolved_precoder_mode(cfg);
    if (cfg.n_k == 1)
        mode = PrecoderMode::scalar;
    return sub_precoder(h_qk, p_k, mode, sigma_q_sq);
}

// Candidate scoring shared by solve_op3 and relax_rx_subset. Returns false
// when the candidate is infeasible under the row-subset rule.
struct ScoredCandidate {
    double ul = 0.0;
    Combiner combiner;
    bool ok = false;
};

ScoredCandidate score_candidate(const PrecoderCandidate& cand, const CMat& c_design,
                                const CMat& c_actual, const CMat& h_km, const CMat& v_m,
                                const LinearPoint& pt, int d_m, int m_k_prime) {
    ScoredCandidate sc;
    const int m_k = static_cast<int>(c_design.rows());
    if (m_k_prime >= m_k) {
        // feasibility already screened inside algorithm1_precoders
        sc.combiner = optimal_combiner(c_actual, cand.v, h_km, pt.sigma_k_sq, d_m);
        sc.ul = ul_rate(sc.combiner.u, c_actual, cand.v, h_km, v_m, pt.sigma_k_sq);
        sc.ok = true;
        return sc;
    }
    // Remark-2 relaxation: keep the m_k_prime rows with the least residual SI
    const RVec res = (c_design * cand.v).rowwise().squaredNorm();
    std::vector<int> order(static_cast<std::size_t>(m_k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return res(a) < res(b); });
    order.resize(static_cast<std::size_t>(m_k_prime));
    std::sort(order.begin(), order.end());
    for (int r : order)
        if (res(r) > pt.lambda_a)
            return sc;
    CMat h_sub(m_k_prime, h_km.cols());
    CMat c_sub(m_k_prime, c_actual.cols());
    for (int i = 0; i < m_k_prime; ++i) {
        h_sub.row(i) = h_km.row(order[static_cast<std::size_t>(i)]);
        c_sub.row(i) = c_actual.row(order[static_cast<std::size_t>(i)]);
    }
    const int d_sub = std::min(d_m, m_k_prime);
    sc.combiner = optimal_combiner(c_sub, cand.v, h_sub, pt.sigma_k_sq, d_sub);
    sc.ul = ul_rate(sc.combiner.u, c_sub, cand.v, h_sub, v_m, pt.sigma_k_sq);
    sc.ok = true;
    return sc;
}

// Shared engine behind solve_op3 and relax_rx_subset.
FdSolution solve_proposed(const ChannelSet& channels, const SystemConfig& cfg,
                          const ChannelParams& params, const ImpairmentParams& impairments,
                          Rng& rng, int m_k_prime) {
    validate(cfg);
    const LinearPoint pt = linearize(cfg, params);
    const int d_m = resolved_d_m(cfg);
    const int alpha_max = resolved_alpha_max(cfg);
    const PrecoderMode mode = resolved_precoder_mode(cfg);
    const CMat v_m = uplink_precoder(cfg.n_m, d_m, pt.p_m);
    const bool taps = cfg.architecture == CancellerArchitecture::taps;

    std::vector<TapCancellerRealization> tap_set;
    std::vector<AuxTxCancellerRealization> aux_set;
    std::size_t n_real = 0;
    if (taps) {
        tap_set = tap_realization_set(channels.h_kk, cfg);
        n_real = tap_set.size();
    } else {
        aux_set = aux_realization_set(channels.h_kk, cfg);
        n_real = aux_set.size();
    }

    // Under the row-subset relaxation the full-row screen inside the
    // candidate sweep would discard exactly the candidates the relaxation is
    // meant to rescue, so the sweep runs unconstrained and the subset rule
    // decides feasibility in the scorer.
    const bool relaxed = m_k_prime < cfg.m_k;
    const double lambda_screen =
        relaxed ? std::numeric_limits<double>::infinity() : pt.lambda_a;

    FdSolution best;
    bool have_best = false;
    for (std::size_t l = 0; l < n_real; ++l) {
        const CMat& c_ideal = taps ? tap_set[l].c_ideal : aux_set[l].c_ideal;
        // candidates are screened on the programmed canceller; the hardware
        // error model only enters the physical channel used for combining
        std::optional<TapCancellerRealization> tap_imp;
        std::optional<AuxTxCancellerRealization> aux_imp;
        if (taps)
            tap_imp = impair_tap_canceller(tap_set[l], impairments, rng);
        else
            aux_imp = impair_aux_canceller(aux_set[l], impairments, rng);
        const CMat c_design = channels.h_kk + c_ideal;
        const CMat c_actual = channels.h_kk + (taps ? tap_imp->c_impaired : aux_imp->c_impaired);

        auto cands = algorithm1_precoders(c_design, channels.h_qk, pt.p_k, lambda_screen,
                                          alpha_max, mode, pt.sigma_q_sq);
        for (auto& cand : cands) {
            cand.realization_index = static_cast<int>(l) + 1;
            const ScoredCandidate sc = score_candidate(cand, c_design, c_actual, channels.h_km,
                                                       v_m, pt, d_m, m_k_prime);
            if (!sc.ok)
                continue;
            const double fd = cand.dl_rate + sc.ul;
            const bool better =
                !have_best || fd > best.fd_rate ||
                (fd == best.fd_rate &&
                 (cand.candidate_index < best.precoder->candidate_index ||
                  (cand.candidate_index == best.precoder->candidate_index &&
                   cand.realization_index < best.precoder->realization_index)));
            if (better) {
                best.design_id = taps ? DesignId::proposed_taps : DesignId::proposed_aux;
                best.tap_canceller = tap_imp;
                best.aux_canceller = aux_imp;
                best.precoder = cand;
                best.combiner = sc.combiner;
                best.dl_rate = cand.dl_rate;
                best.ul_rate = sc.ul;
                best.fd_rate = fd;
                best.feasible = true;
                best.alpha_used = cand.alpha;
                have_best = true;
            }
        }
    }
    if (!have_best)
        return fallback_half_duplex(channels, cfg, params);
    return best;
}

} // namespace

std::string to_string(DesignId id) {
    switch (id) {
    case DesignId::proposed_taps: return "proposed_taps";
    case DesignId::proposed_aux: return "proposed_aux";
    case DesignId::sota_full_taps: return "sota_taps";
    case DesignId::sota_full_aux: return "sota_aux";
    case DesignId::softnull: return "softnull";
    case DesignId::half_duplex_dl: return "half_duplex_dl";
    case DesignId::half_duplex_ul: return "half_duplex_ul";
    }
    return "unknown";
}

FdSolution solve_op3(const ChannelSet& channels, const SystemConfig& cfg,
                     const ChannelParams& params, const ImpairmentParams& impairments, Rng& rng) {
    return solve_proposed(channels, cfg, params, impairments, rng, cfg.m_k);
}

FdSolution relax_rx_subset(const ChannelSet& channels, const SystemConfig& cfg,
                           const ChannelParams& params, int m_k_prime,
                           const ImpairmentParams& impairments, Rng& rng) {
    if (m_k_prime < 1 || m_k_prime > cfg.m_k)
        throw std::invalid_argument("relax_rx_subset: m_k_prime must lie in [1, m_k]");
    return solve_proposed(channels, cfg, params, impairments, rng, m_k_prime);
}

FdSolution solve_half_duplex(const ChannelSet& channels, const SystemConfig& cfg,
                             const ChannelParams& params, bool downlink) {
    validate(cfg);
    const LinearPoint pt = linearize(cfg, params);
    FdSolution sol;
    sol.feasible = false;
    if (downlink) {
        const CMat v = downlink_only_precoder(channels.h_qk, pt.p_k, cfg, pt.sigma_q_sq);
        sol.design_id = DesignId::half_duplex_dl;
        sol.dl_rate = dl_rate(v, channels.h_qk, pt.sigma_q_sq);
        sol.fd_rate = sol.dl_rate;
        return sol;
    }
    sol.design_id = DesignId::half_duplex_ul;
    const int d_m = resolved_d_m(cfg);
    // a rank-deficient uplink channel supports fewer streams; zero channel
    // carries nothing
    Eigen::JacobiSVD<CMat> svd(channels.h_km);
    const RVec sv = svd.singularValues();
    const double tol = static_cast<double>(std::max(channels.h_km.rows(), channels.h_km.cols())) *
                       std::numeric_limits<double>::epsilon() * (sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol)
            ++rank;
    if (rank == 0)
        return sol;
    const int d_m_eff = std::min(d_m, rank);
    const CMat v_m = uplink_precoder(cfg.n_m, d_m_eff, pt.p_m);
    const CMat c_zero = CMat::Zero(cfg.m_k, cfg.n_k);
    const CMat v_zero = CMat::Zero(cfg.n_k, 1);
    Combiner comb = optimal_combiner(c_zero, v_zero, channels.h_km, pt.sigma_k_sq, d_m_eff);
    sol.ul_rate = ul_rate(comb.u, c_zero, v_zero, channels.h_km, v_m, pt.sigma_k_sq);
    sol.fd_rate = sol.ul_rate;
    sol.combiner = std::move(comb);
    return sol;
}

FdSolution fallback_half_duplex(const ChannelSet& channels, const SystemConfig& cfg,
                                const ChannelParams& params) {
    FdSolution dl = solve_half_duplex(channels, cfg, params, true);
    FdSolution ul = solve_half_duplex(channels, cfg, params, false);
    return dl.fd_rate >= ul.fd_rate ? dl : ul;
}

FdSolution solve_sota_full_canceller(const ChannelSet& channels, const SystemConfig& cfg,
                                     const ChannelParams& params,
                                     const ImpairmentParams& impairments, Rng& rng,
                                     CancellerArchitecture arch) {
    validate(cfg);
    const LinearPoint pt = linearize(cfg, params);
    const int d_m = resolved_d_m(cfg);
    const CMat v_m = uplink_precoder(cfg.n_m, d_m, pt.p_m);
    const bool taps = arch == CancellerArchitecture::taps;

    std::optional<TapCancellerRealization> tap_imp;
    std::optional<AuxTxCancellerRealization> aux_imp;
    CMat c_impaired;
    if (taps) {
        tap_imp = impair_tap_canceller(
            realize_tap_canceller_rowwise(channels.h_kk, cfg.m_k * cfg.n_k), impairments, rng);
        c_impaired = tap_imp->c_impaired;
    } else {
        aux_imp = impair_aux_canceller(realize_aux_canceller_largest_rows(channels.h_kk, cfg.m_k),
                                       impairments, rng);
        c_impaired = aux_imp->c_impaired;
    }
    const CMat residual = channels.h_kk + c_impaired;

    // null-space projection: transmit only in the least-dominant directions
    // of what the full canceller leaves behind
    const int alpha = std::min(cfg.m_q, cfg.n_k);
    Eigen::JacobiSVD<CMat> svd(residual, Eigen::ComputeFullV);
    const CMat f = svd.matrixV().rightCols(alpha);
    CMat g;
    if (alpha >= 2) {
        PrecoderMode mode = resolved_precoder_mode(cfg);
        if (mode == PrecoderMode::mrt && cfg.m_q != 1)
            mode = PrecoderMode::open_loop;
        g = sub_precoder(channels.h_qk * f, pt.p_k, mode, pt.sigma_q_sq);
    } else {
        g = sub_precoder(channels.h_qk * f, pt.p_k, PrecoderMode::scalar);
    }
    const CMat v = f * g;
    const RVec rows = (residual * v).rowwise().squaredNorm();
    if (!(rows.array() <= pt.lambda_a).all()) {
        FdSolution sol = fallback_half_duplex(channels, cfg, params);
        sol.tap_canceller = std::move(tap_imp);
        sol.aux_canceller = std::move(aux_imp);
        return sol;
    }

    FdSolution sol;
    sol.design_id = taps ? DesignId::sota_full_taps : DesignId::sota_full_aux;
    sol.tap_canceller = std::move(tap_imp);
    sol.aux_canceller = std::move(aux_imp);
    PrecoderCandidate cand;
    cand.realization_index = 1;
    cand.candidate_index = 1;
    cand.alpha = alpha;
    cand.f = f;
    cand.g = g;
    cand.v = v;
    cand.dl_rate = dl_rate(v, channels.h_qk, pt.sigma_q_sq);
    sol.combiner = optimal_combiner(residual, v, channels.h_km, pt.sigma_k_sq, d_m);
    sol.dl_rate = cand.dl_rate;
    sol.ul_rate = ul_rate(sol.combiner->u, residual, v, channels.h_km, v_m, pt.sigma_k_sq);
    sol.fd_rate = sol.dl_rate + sol.ul_rate;
    sol.feasible = true;
    sol.alpha_used = alpha;
    sol.precoder = std::move(cand);
    return sol;
}

FdSolution solve_softnull(const ChannelSet& channels, const SystemConfig& cfg,
                          const ChannelParams& params) {
    validate(cfg);
    const LinearPoint pt = linearize(cfg, params);
    const int d_m = resolved_d_m(cfg);
    const CMat v_m = uplink_precoder(cfg.n_m, d_m, pt.p_m);
    const int alpha_max = resolved_alpha_max(cfg);

    Eigen::JacobiSVD<CMat> svd(channels.h_kk, Eigen::ComputeFullV);
    const CMat d = svd.matrixV();
    for (int alpha = alpha_max; alpha >= 1; --alpha) {
        const CMat f = d.rightCols(alpha);
        CMat g;
        if (alpha >= 2) {
            // single stream on the dominant direction of the squeezed channel
            Eigen::JacobiSVD<CMat> esvd(channels.h_qk * f, Eigen::ComputeFullV);
            g = std::sqrt(pt.p_k) * esvd.matrixV().col(0);
        } else {
            g = CMat::Constant(1, 1, std::sqrt(pt.p_k));
        }
        const CMat v = f * g;
        const RVec rows = (channels.h_kk * v).rowwise().squaredNorm();
        if (!(rows.array() <= pt.lambda_a).all())
            continue;

        FdSolution sol;
        sol.design_id = DesignId::softnull;
        PrecoderCandidate cand;
        cand.realization_index = 1;
        cand.candidate_index = 1;
        cand.alpha = alpha;
        cand.f = f;
        cand.g = g;
        cand.v = v;
        cand.dl_rate = dl_rate(v, channels.h_qk, pt.sigma_q_sq);
        sol.combiner = optimal_combiner(channels.h_kk, v, channels.h_km, pt.sigma_k_sq, d_m);
        sol.dl_rate = cand.dl_rate;
        sol.ul_rate = ul_rate(sol.combiner->u, channels.h_kk, v, channels.h_km, v_m, pt.sigma_k_sq);
        sol.fd_rate = sol.dl_rate + sol.ul_rate;
        sol.feasible = true;
        sol.alpha_used = alpha;
        sol.precoder = std::move(cand);
        return sol;
    }
    return fallback_half_duplex(channels, cfg, params);
}

} // namespace fdmimo
