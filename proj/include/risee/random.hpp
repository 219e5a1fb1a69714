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

#ifndef RISEE_RANDOM_HPP
#define RISEE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace risee {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for work item `index` of a campaign started from `master`. Pure, so
/// trials can be generated in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic variate source. The integer stream is std::mt19937_64, whose
/// algorithm is fixed by the standard; uniform and normal variates are derived
/// here (53-bit mantissa fill, Box-Muller) rather than through the
/// implementation-defined std distributions, so a seed yields the same doubles
/// on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }
    /// Standard normal.
    double normal();
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

} // namespace risee

#endif
