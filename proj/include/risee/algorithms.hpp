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

#ifndef RISEE_ALGORITHMS_HPP
#define RISEE_ALGORITHMS_HPP

#include "risee/model.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace risee {

enum class InitStrategy { uniform_feasible, random_feasible };

struct AlternatingOptions {
    double rel_tol = 1e-8;
    int max_iters = 500;
    InitStrategy init = InitStrategy::uniform_feasible;
    std::uint64_t init_seed = 0; // used by random_feasible only

    void validate() const;
};

struct SolveTrace {
    std::vector<double> objective; // |w^H G Phi H q| after each sweep over the blocks
    int iterations = 0;
    bool converged = false;
    EvalResult final;
};

struct AlternatingResult {
    LinkConfig config;
    SolveTrace trace;
};

/// Alternating maximization of the channel-gain surrogate over (Phi, q, w) under
/// both exposure constraints, followed by a single power step.
AlternatingResult alternating_max(const SystemParams& params, const ChannelPair& channels,
                                  const ExposureCoefficients& coeffs, const AlternatingOptions& opts = {});

struct SpecialCaseResult {
    LinkConfig config;
    /// objective_table(rx, tx) = sum_n |G(rx, n) H(n, tx)|
    Eigen::MatrixXd objective_table;
    Eigen::Index tx_index = 0;
    Eigen::Index rx_index = 0;
    EvalResult eval;
};

/// Closed-form global optimum when c_n = c, d_n = d and P_q/c <= 1, P_w/d <= 1.
/// Throws PreconditionError otherwise.
SpecialCaseResult global_special_case(const SystemParams& params, const ChannelPair& channels, double coeff_c,
                                      double coeff_d);

/// Feasible starting beamformer/combiner for the alternating loop.
CVector initial_weights(const RVector& coeffs, double budget, InitStrategy init, std::uint64_t seed);

/// The six compared schemes:
///  a  EMF-aware alternating maximization
///  b  closed-form global optimum (isotropic, tight budgets)
///  c  as (a) with fixed random RIS phases
///  d  as (b) with fixed random RIS phases
///  e  EMF-unaware alternating maximization (unit-norm constraints only)
///  f  as (e) with fixed random RIS phases
enum class Scheme { a, b, c, d, e, f };

inline constexpr Scheme kAllSchemes[] = {Scheme::a, Scheme::b, Scheme::c, Scheme::d, Scheme::e, Scheme::f};

char to_char(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view text);

/// Schemes b and d need isotropic coefficients with budget ratios <= 1.
bool requires_special_case(Scheme s);
bool uses_random_phases(Scheme s);
bool is_emf_aware(Scheme s);

struct SchemeOptions {
    AlternatingOptions alternating;
    std::uint64_t phase_seed = 0; // random RIS phases for schemes c, d, f
};

struct SchemeResult {
    LinkConfig config;
    EvalResult eval;
    int iterations = 0;
    bool converged = true;
};

/// Uniform phases in [0, 2pi) drawn from seed; identical for every scheme given the same seed.
RVector random_phases(Eigen::Index n, std::uint64_t seed);

SchemeResult run_scheme(Scheme scheme, const SystemParams& params, const ChannelPair& channels,
                        const ExposureCoefficients& coeffs, const SchemeOptions& opts = {});

} // namespace risee

#endif
