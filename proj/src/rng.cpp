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

#include "fdmimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace fdmimo {

namespace {

// splitmix64 finalizer; mixes one word into the running state.
std::uint64_t mix(std::uint64_t state, std::uint64_t value) {
    std::uint64_t z = state + value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t substream) {
    std::uint64_t s = mix(0x6a09e667f3bcc908ULL, master_seed);
    s = mix(s, stream);
    s = mix(s, substream);
    engine_.seed(s);
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
    // 53 random mantissa bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
}

std::complex<double> Rng::complex_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    // |z|^2 ~ Exp(1) gives unit total variance split over both parts
    const double r = std::sqrt(-std::log(1.0 - u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace fdmimo
