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

#include <complex>
#include <cstdint>
#include <random>

namespace fdmimo {

/// Seeded substream generator. Every (master_seed, stream, substream) triple
/// yields an independent, reproducible draw sequence, so parallel Monte Carlo
/// trials can each own a stream without coordination. Normal variates use
/// Box-Muller on the raw engine output, which keeps results bit-identical
/// across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0, std::uint64_t substream = 0);

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal N(0, 1).
    double normal();

    /// Circularly-symmetric complex normal CN(0, 1); real and imaginary
    /// parts are each N(0, 1/2).
    std::complex<double> complex_normal();

  private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

} // namespace fdmimo
