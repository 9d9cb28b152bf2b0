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

#include "fdmimo/beamforming.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdmimo {

namespace {

// log2 det of a Hermitian positive-definite matrix via Cholesky.
double log2det_hermitian_pd(const CMat& a, const char* who) {
    Eigen::LLT<CMat> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error(std::string(who) + ": matrix is not positive definite");
    double acc = 0.0;
    const CMat& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        acc += std::log2(std::real(l(i, i)));
    return 2.0 * acc;
}

// log2 |det| via LU, for the general (non-Hermitian) rate matrix.
double log2det_abs(const CMat& a) {
    Eigen::PartialPivLU<CMat> lu(a);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        acc += std::log2(std::abs(lu.matrixLU()(i, i)));
    return acc;
}

} // namespace

double dl_rate(const CMat& v, const CMat& h_qk, double sigma_q_sq) {
    if (sigma_q_sq <= 0.0)
        throw std::invalid_argument("dl_rate: sigma_q_sq must be positive");
    if (h_qk.cols() != v.rows())
        throw std::invalid_argument("dl_rate: dimension mismatch between h_qk and v");
    const Eigen::Index m_q = h_qk.rows();
    const CMat hv = h_qk * v;
    const CMat a = CMat::Identity(m_q, m_q) + hv * hv.adjoint() / sigma_q_sq;
    const double rate = log2det_hermitian_pd(a, "dl_rate");
    if (!std::isfinite(rate))
        throw std::runtime_error("dl_rate: non-finite result");
    return std::max(0.0, rate);
}

double ul_rate(const CMat& u, const CMat& c_eff, const CMat& v, const CMat& h_km, const CMat& v_m,
               double sigma_k_sq) {
    const Eigen::Index d_m = u.rows();
    const CMat ucv = u * c_eff * v;
    const CMat q = ucv * ucv.adjoint() + sigma_k_sq * (u * u.adjoint());
    Eigen::LLT<CMat> llt(q);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("ul_rate: singular interference-plus-noise covariance");
    const CMat uhv = u * h_km * v_m;
    const CMat s = uhv * uhv.adjoint();
    // det(I + S Q^-1) = det(I + Q^-1 S)
    const CMat a = CMat::Identity(d_m, d_m) + llt.solve(s);
    const double rate = log2det_abs(a);
    if (!std::isfinite(rate))
        throw std::runtime_error("ul_rate: non-finite result");
    return std::max(0.0, rate);
}

RVec waterfilling(const RVec& gains, double total_power, double noise_power) {
    if (total_power <= 0.0)
        throw std::invalid_argument("waterfilling: total_power must be positive");
    if (noise_power <= 0.0)
        throw std::invalid_argument("waterfilling: noise_power must be positive");
    const Eigen::Index n = gains.size();
    std::vector<double> floor(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
    bool any = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (gains(i) < 0.0)
            throw std::invalid_argument("waterfilling: gains must be >= 0");
        if (gains(i) > 0.0) {
            floor[static_cast<std::size_t>(i)] = noise_power / (gains(i) * gains(i));
            any = true;
        }
    }
    if (!any)
        throw std::domain_error("waterfilling: all channel gains are zero");

    auto allocated = [&](double mu) {
        double sum = 0.0;
        for (double f : floor)
            if (std::isfinite(f))
                sum += std::max(0.0, mu - f);
        return sum;
    };

    double lo = 0.0;
    double hi = total_power;
    for (double f : floor)
        if (std::isfinite(f))
            hi = std::max(hi, f + total_power);
    // bisection on the water level, ~1 ulp after 200 halvings
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (allocated(mid) < total_power)
            lo = mid;
        else
            hi = mid;
        if (std::abs(allocated(mid) - total_power) <= 1e-12 * std::max(1.0, total_power))
            break;
    }
    const double mu = 0.5 * (lo + hi);
    RVec p = RVec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::isfinite(floor[static_cast<std::size_t>(i)]))
            p(i) = std::max(0.0, mu - floor[static_cast<std::size_t>(i)]);
    return p;
}

CMat sub_precoder(const CMat& h_eff, double p_k, PrecoderMode mode, double noise_power) {
    const Eigen::Index m_q = h_eff.rows();
    const Eigen::Index alpha = h_eff.cols();
    if (p_k < 0.0)
        throw std::invalid_argument("sub_precoder: p_k must be >= 0");
    switch (mode) {
    case PrecoderMode::scalar: {
        if (alpha != 1)
            throw std::invalid_argument("sub_precoder: scalar mode requires alpha == 1");
        return CMat::Constant(1, 1, std::sqrt(p_k));
    }
    case PrecoderMode::mrt: {
        if (m_q != 1 || alpha < 2)
            throw std::invalid_argument("sub_precoder: mrt requires m_q == 1 and alpha >= 2");
        const double nrm = h_eff.norm();
        if (nrm == 0.0)
            return CMat::Zero(alpha, 1);
        return std::sqrt(p_k) * h_eff.adjoint() / nrm;
    }
    case PrecoderMode::open_loop: {
        const Eigen::Index d_k = std::min(m_q, alpha);
        CMat g = CMat::Zero(alpha, d_k);
        g.diagonal().setConstant(std::sqrt(p_k / static_cast<double>(d_k)));
        return g;
    }
    case PrecoderMode::closed_loop: {
        const Eigen::Index d_k = std::min(m_q, alpha);
        Eigen::JacobiSVD<CMat> svd(h_eff, Eigen::ComputeThinV);
        const RVec sv = svd.singularValues();
        if (sv.maxCoeff() < 1e-15) // degenerate channel, nothing to match
            return sub_precoder(h_eff, p_k, PrecoderMode::open_loop, noise_power);
        const RVec p = waterfilling(sv.head(d_k), p_k, noise_power);
        return svd.matrixV().leftCols(d_k) * p.cwiseSqrt().asDiagonal();
    }
    case PrecoderMode::auto_select:
        break;
    }
    throw std::invalid_argument("sub_precoder: mode must be resolved before use");
}

CMat uplink_precoder(int n_m, int d_m, double p_m) {
    if (d_m < 1 || d_m > n_m)
        throw std::invalid_argument("uplink_precoder: d_m must lie in [1, n_m]");
    CMat v = CMat::Zero(n_m, d_m);
    v.diagonal().setConstant(std::sqrt(p_m / static_cast<double>(d_m)));
    return v;
}

std::vector<PrecoderCandidate> algorithm1_precoders(const CMat& c_eff_design, const CMat& h_qk,
                                                    double p_k, double lambda_a, int alpha_max,
                                                    PrecoderMode mode, double sigma_q_sq) {
    const Eigen::Index n_k = c_eff_design.cols();
    if (alpha_max < 1 || alpha_max > n_k)
        throw std::invalid_argument("algorithm1_precoders: alpha_max must lie in [1, n_k]");
    if (h_qk.cols() != n_k)
        throw std::invalid_argument("algorithm1_precoders: h_qk column count mismatch");

    // Right-singular basis of the screening channel, descending singular values.
    Eigen::JacobiSVD<CMat> svd(c_eff_design, Eigen::ComputeFullV);
    const CMat d = svd.matrixV();

    std::vector<PrecoderCandidate> out;
    int m = 0;
    auto screen = [&](int alpha, const CMat& f, const CMat& g) {
        const CMat v = f * g;
        const RVec rows = (c_eff_design * v).rowwise().squaredNorm();
        if ((rows.array() <= lambda_a).all()) {
            PrecoderCandidate cand;
            cand.candidate_index = ++m;
            cand.alpha = alpha;
            cand.f = f;
            cand.g = g;
            cand.v = v;
            cand.dl_rate = dl_rate(v, h_qk, sigma_q_sq);
            out.push_back(std::move(cand));
        }
    };

    for (int alpha = alpha_max; alpha >= 2; --alpha) {
        const CMat f = d.rightCols(alpha);
        screen(alpha, f, sub_precoder(h_qk * f, p_k, mode, sigma_q_sq));
    }
    const CMat f1 = d.col(n_k - 1);
    screen(1, f1, sub_precoder(h_qk * f1, p_k, PrecoderMode::scalar));
    return out;
}

Combiner optimal_combiner(const CMat& c_eff, const CMat& v, const CMat& h_km, double sigma_k_sq,
                          int d_m) {
    const Eigen::Index m_k = c_eff.rows();
    if (d_m < 1 || d_m > m_k)
        throw std::invalid_argument("optimal_combiner: d_m must lie in [1, m_k]");
    if (sigma_k_sq <= 0.0)
        throw std::invalid_argument("optimal_combiner: sigma_k_sq must be positive");

    const CMat cv = c_eff * v;
    const CMat b = cv * cv.adjoint() + sigma_k_sq * CMat::Identity(m_k, m_k);
    Eigen::SelfAdjointEigenSolver<CMat> eig(b);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
        throw std::runtime_error("optimal_combiner: covariance eigendecomposition failed");

    // whitening transform T with T B T^H = I
    const CMat t = eig.eigenvalues().array().rsqrt().matrix().asDiagonal() *
                   eig.eigenvectors().adjoint();
    const CMat whitened = t * h_km;
    Eigen::JacobiSVD<CMat> svd(whitened, Eigen::ComputeFullU);
    const RVec sv = svd.singularValues();
    const double tol = static_cast<double>(std::max(whitened.rows(), whitened.cols())) *
                       std::numeric_limits<double>::epsilon() * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol)
            ++rank;
    if (d_m > rank)
        throw std::runtime_error("optimal_combiner: d_m exceeds the whitened channel rank");

    const CMat w = svd.matrixU().leftCols(d_m);
    CMat u = w.adjoint() * t;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        u.row(i) /= u.row(i).norm();
    return Combiner{std::move(u)};
}

} // namespace fdmimo
