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

#include "risee/channel.hpp"
#include "risee/error.hpp"
#include "risee/random.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace risee {

void ChannelModel::validate() const
{
    if (dims.ris_elements < 1 || dims.tx_antennas < 1 || dims.rx_antennas < 1)
        throw InputError("ChannelModel: N, N_T and N_R must all be >= 1");
    if (!std::isfinite(scatter_variance) || scatter_variance < 0.0)
        throw InputError("ChannelModel: scatter_variance must be finite and non-negative");
    if (!std::isfinite(mean_h.real()) || !std::isfinite(mean_h.imag()) || !std::isfinite(mean_g.real())
        || !std::isfinite(mean_g.imag()))
        throw InputError("ChannelModel: Rician means must be finite");
}

ChannelPair sample(const ChannelModel& model, std::uint64_t seed)
{
    model.validate();
    Rng rng(seed);
    const double scale = std::sqrt(model.scatter_variance / 2.0);
    auto draw = [&](cdouble mean) {
        const double re = rng.normal();
        const double im = rng.normal();
        return mean + scale * cdouble(re, im);
    };

    const auto& d = model.dims;
    ChannelPair out{CMatrix(d.ris_elements, d.tx_antennas), CMatrix(d.rx_antennas, d.ris_elements)};
    for (Eigen::Index r = 0; r < out.h.rows(); ++r)
        for (Eigen::Index c = 0; c < out.h.cols(); ++c)
            out.h(r, c) = draw(model.mean_h);
    for (Eigen::Index r = 0; r < out.g.rows(); ++r)
        for (Eigen::Index c = 0; c < out.g.cols(); ++c)
            out.g(r, c) = draw(model.mean_g);
    return out;
}

namespace {

constexpr std::array<char, 8> kMagic{'R', 'I', 'S', 'C', 'H', 'A', 'N', '1'};

template <typename Fn>
void for_each_entry(const ChannelPair& channels, Fn&& fn)
{
    for (const CMatrix* m : {&channels.h, &channels.g})
        for (Eigen::Index r = 0; r < m->rows(); ++r)
            for (Eigen::Index c = 0; c < m->cols(); ++c)
                fn((*m)(r, c));
}

void put_u64(std::ostream& os, std::uint64_t v)
{
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    os.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& is)
{
    std::array<unsigned char, 8> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return v;
}

} // namespace

std::uint64_t channel_hash(const ChannelPair& channels)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto feed = [&](double x) {
        const auto bits = std::bit_cast<std::uint64_t>(x);
        for (int i = 0; i < 8; ++i) {
            hash ^= (bits >> (8 * i)) & 0xffu;
            hash *= 0x100000001b3ULL;
        }
    };
    feed(static_cast<double>(channels.h.rows()));
    feed(static_cast<double>(channels.h.cols()));
    feed(static_cast<double>(channels.g.rows()));
    for_each_entry(channels, [&](cdouble z) {
        feed(z.real());
        feed(z.imag());
    });
    return hash;
}

void write_channel(const std::filesystem::path& path, const ChannelPair& channels, std::uint64_t seed)
{
    channels.validate();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open channel file for writing: " + path.string());
    os.write(kMagic.data(), kMagic.size());
    put_u64(os, static_cast<std::uint64_t>(channels.ris_elements()));
    put_u64(os, static_cast<std::uint64_t>(channels.tx_antennas()));
    put_u64(os, static_cast<std::uint64_t>(channels.rx_antennas()));
    put_u64(os, seed);
    for_each_entry(channels, [&](cdouble z) {
        put_u64(os, std::bit_cast<std::uint64_t>(z.real()));
        put_u64(os, std::bit_cast<std::uint64_t>(z.imag()));
    });
    if (!os)
        throw IoError("failed writing channel file: " + path.string());
}

LoadedChannel read_channel(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open channel file: " + path.string());
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kMagic)
        throw IoError("not a channel dump (bad magic): " + path.string());

    const std::uint64_t n = get_u64(is);
    const std::uint64_t n_tx = get_u64(is);
    const std::uint64_t n_rx = get_u64(is);
    LoadedChannel out;
    out.seed = get_u64(is);
    constexpr std::uint64_t kMaxDim = 1u << 20;
    if (!is || n < 1 || n_tx < 1 || n_rx < 1 || n > kMaxDim || n_tx > kMaxDim || n_rx > kMaxDim)
        throw IoError("corrupt channel header: " + path.string());

    out.channels.h.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n_tx));
    out.channels.g.resize(static_cast<Eigen::Index>(n_rx), static_cast<Eigen::Index>(n));
    for (CMatrix* m : {&out.channels.h, &out.channels.g})
        for (Eigen::Index r = 0; r < m->rows(); ++r)
            for (Eigen::Index c = 0; c < m->cols(); ++c) {
                const double re = std::bit_cast<double>(get_u64(is));
                const double im = std::bit_cast<double>(get_u64(is));
                (*m)(r, c) = cdouble(re, im);
            }
    if (!is)
        throw IoError("truncated channel file: " + path.string());
    if (is.peek() != std::char_traits<char>::eof())
        throw IoError("trailing bytes after channel data: " + path.string());
    out.channels.validate();
    return out;
}

} // namespace risee
