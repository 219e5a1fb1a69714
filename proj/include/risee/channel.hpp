// SPDX-License-Identifier: Apache-2.0
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

#ifndef RISEE_CHANNEL_HPP
#define RISEE_CHANNEL_HPP

#include "risee/model.hpp"

#include <cstdint>
#include <filesystem>

namespace risee {

struct ChannelDims {
    Eigen::Index ris_elements = 100;
    Eigen::Index tx_antennas = 4;
    Eigen::Index rx_antennas = 4;
};

/// Rician fading: every entry of H and G is CN(mean, scatter_variance).
/// Defaults give a line-of-sight power four times the scattered power (K = 4).
struct ChannelModel {
    cdouble mean_h{2.0, 0.0};
    cdouble mean_g{2.0, 0.0};
    double scatter_variance = 1.0;
    ChannelDims dims;

    [[nodiscard]] double k_factor_h() const { return std::norm(mean_h) / scatter_variance; }
    [[nodiscard]] double k_factor_g() const { return std::norm(mean_g) / scatter_variance; }

    void validate() const;
};

/// Draws H (row-major, N x N_T) then G (row-major, N_R x N) from one Rng(seed)
/// stream; each entry is mean + sqrt(variance / 2) (z1 + j z2).
ChannelPair sample(const ChannelModel& model, std::uint64_t seed);

/// FNV-1a over the IEEE-754 bit patterns of H then G (row-major, re before im).
std::uint64_t channel_hash(const ChannelPair& channels);

/// Binary channel dump:
///   8 bytes  magic "RISCHAN1"
///   4 x u64  N, N_T, N_R, seed
///   H row-major then G row-major, each entry (re, im) as f64
/// All integers and doubles little-endian.
void write_channel(const std::filesystem::path& path, const ChannelPair& channels, std::uint64_t seed);

struct LoadedChannel {
    ChannelPair channels;
    std::uint64_t seed = 0;
};

LoadedChannel read_channel(const std::filesystem::path& path);

} // namespace risee

#endif
