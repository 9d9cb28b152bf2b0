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

#include "fdmimo/canceller.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fdmimo {

namespace {

// Row indices of h sorted by descending Euclidean norm, lowest index first
// on ties.
std::vector<int> rows_by_descending_norm(const CMat& h) {
    std::vector<int> order(static_cast<std::size_t>(h.rows()));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        norms[i] = h.row(static_cast<int>(i)).norm();
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(b)]; });
    return order;
}

} // namespace

TapCancellerRealization realize_tap_canceller_at(const CMat& h_kk,
                                                 const std::vector<std::pair<int, int>>& positions) {
    const int m_k = static_cast<int>(h_kk.rows());
    const int n_k = static_cast<int>(h_kk.cols());
    const int n = static_cast<int>(positions.size());
    for (const auto& [i, j] : positions)
        if (i < 0 || i >= m_k || j < 0 || j >= n_k)
            throw std::invalid_argument("realize_tap_canceller_at: tap position out of range");

    TapCancellerRealization real;
    real.positions = positions;
    real.l1 = RMat::Zero(n, n_k);
    real.l2 = CMat::Zero(n, n);
    real.l3 = RMat::Zero(m_k, n);
    for (int t = 0; t < n; ++t) {
        const auto [i, j] = positions[static_cast<std::size_t>(t)];
        real.l1(t, j) = 1.0;
        real.l2(t, t) = -h_kk(i, j);
        real.l3(i, t) = 1.0;
    }
    real.c_ideal = real.l3 * real.l2 * real.l1;
    return real;
}

TapCancellerRealization realize_tap_canceller_rowwise(const CMat& h_kk, int n_taps) {
    const int m_k = static_cast<int>(h_kk.rows());
    const int n_k = static_cast<int>(h_kk.cols());
    if (n_taps < 0 || n_taps > m_k * n_k)
        throw std::invalid_argument("n_taps out of range [0, m_k*n_k]");

    std::vector<std::pair<int, int>> positions;
    positions.reserve(static_cast<std::size_t>(n_taps));
    int left = n_taps;
    for (int row : rows_by_descending_norm(h_kk)) {
        if (left <= 0)
            break;
        std::vector<int> cols(static_cast<std::size_t>(n_k));
        std::iota(cols.begin(), cols.end(), 0);
        std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) {
            return std::abs(h_kk(row, a)) > std::abs(h_kk(row, b));
        });
        const int take = std::min(left, n_k);
        for (int t = 0; t < take; ++t)
            positions.emplace_back(row, cols[static_cast<std::size_t>(t)]);
        left -= take;
    }
    return realize_tap_canceller_at(h_kk, positions);
}

AuxTxCancellerRealization realize_aux_canceller_rows(const CMat& h_kk, const std::vector<int>& rows) {
    const int m_k = static_cast<int>(h_kk.rows());
    const int n_k = static_cast<int>(h_kk.cols());
    const int n = static_cast<int>(rows.size());
    for (int r : rows)
        if (r < 0 || r >= m_k)
            throw std::invalid_argument("realize_aux_canceller_rows: row index out of range");

    AuxTxCancellerRealization real;
    real.rows = rows;
    real.l4 = CMat::Zero(n, n_k);
    real.l5 = RMat::Zero(m_k, n);
    for (int i = 0; i < n; ++i) {
        real.l4.row(i) = -h_kk.row(rows[static_cast<std::size_t>(i)]);
        real.l5(rows[static_cast<std::size_t>(i)], i) = 1.0;
    }
    real.c_ideal = real.l5 * real.l4;
    return real;
}

AuxTxCancellerRealization realize_aux_canceller_largest_rows(const CMat& h_kk, int n_aux) {
    const int m_k = static_cast<int>(h_kk.rows());
    if (n_aux < 0 || n_aux > m_k)
        throw std::invalid_argument("n_aux out of range [0, m_k]");
    auto order = rows_by_descending_norm(h_kk);
    order.resize(static_cast<std::size_t>(n_aux));
    return realize_aux_canceller_rows(h_kk, order);
}

std::uint64_t enumerate_realization_count(CancellerArchitecture arch, int m_k, int n_k, int n) {
    if (m_k < 1 || n_k < 1 || n < 0)
        throw std::invalid_argument("enumerate_realization_count: invalid dimensions");
    const std::uint64_t slots =
        arch == CancellerArchitecture::taps
            ? static_cast<std::uint64_t>(m_k) * static_cast<std::uint64_t>(n_k)
            : static_cast<std::uint64_t>(m_k);
    const auto k = static_cast<std::uint64_t>(n);
    if (k > slots)
        throw std::invalid_argument("enumerate_realization_count: n exceeds available slots");
    const std::uint64_t kk = std::min(k, slots - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        acc = acc * (slots - kk + i) / i; // exact: product of i consecutive ints divides by i!
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("enumerate_realization_count: count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

TapCancellerRealization impair_tap_canceller(const TapCancellerRealization& real,
                                             const ImpairmentParams& params, Rng& rng) {
    if (params.tap_phase_err_max_rad < 0 || params.tap_mag_err_max_db < 0)
        throw std::invalid_argument("impair_tap_canceller: error bounds must be >= 0");
    TapCancellerRealization out = real;
    out.c_impaired = real.c_ideal;
    for (const auto& [i, j] : real.positions) {
        const double a = rng.uniform(-params.tap_phase_err_max_rad, params.tap_phase_err_max_rad);
        const double b = rng.uniform(-params.tap_mag_err_max_db, params.tap_mag_err_max_db);
        out.c_impaired(i, j) *= std::polar(std::pow(10.0, b / 20.0), a);
    }
    return out;
}

CMat aux_phase_mismatch(const RVec& phi_aux, const RVec& phi_tx) {
    CMat phi(phi_aux.size(), phi_tx.size());
    for (Eigen::Index i = 0; i < phi_aux.size(); ++i)
        for (Eigen::Index j = 0; j < phi_tx.size(); ++j)
            phi(i, j) = std::polar(1.0, phi_aux(i)) - std::polar(1.0, phi_tx(j)) + 1.0;
    return phi;
}

AuxTxCancellerRealization impair_aux_canceller(const AuxTxCancellerRealization& real,
                                               const ImpairmentParams& params, Rng& rng) {
    if (params.aux_phase_jitter_std_rad < 0)
        throw std::invalid_argument("impair_aux_canceller: jitter std must be >= 0");
    const auto n = static_cast<Eigen::Index>(real.rows.size());
    const Eigen::Index n_k = real.l4.cols();
    RVec phi_aux(n), phi_tx(n_k);
    for (Eigen::Index i = 0; i < n; ++i)
        phi_aux(i) = params.aux_phase_jitter_std_rad * rng.normal();
    for (Eigen::Index j = 0; j < n_k; ++j)
        phi_tx(j) = params.aux_phase_jitter_std_rad * rng.normal();

    AuxTxCancellerRealization out = real;
    const CMat l4_hat = aux_phase_mismatch(phi_aux, phi_tx).cwiseProduct(real.l4);
    out.c_impaired = real.l5 * l4_hat;
    return out;
}

double hardware_reduction_percent(CancellerArchitecture arch, int n, int m_k, int n_k) {
    const double full = arch == CancellerArchitecture::taps
                            ? static_cast<double>(m_k) * static_cast<double>(n_k)
                            : static_cast<double>(m_k);
    return 100.0 * (1.0 - static_cast<double>(n) / full);
}

} // namespace fdmimo
