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

#ifndef RISEE_VALIDATION_HPP
#define RISEE_VALIDATION_HPP

#include "risee/subsolvers.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace risee {

/// Solvers exercised by the property suite. Replaceable so a deliberately
/// broken implementation can be shown to fail.
struct SolverHooks {
    std::function<RVector(const CVector&, const CVector&)> phases = optimize_phases;
    std::function<ConicSolution(const ConicLinearProblem&)> conic = solve_conic_linear;
    std::function<RVector(const RVector&, double)> single_antenna = select_single_antenna;
    std::function<double(const PowerProblem&)> power = optimize_power;
};

struct PropertyResult {
    std::string name;
    std::size_t instances = 0;
    std::vector<std::uint64_t> failing_seeds;
    std::string first_failure;

    [[nodiscard]] bool passed() const { return failing_seeds.empty(); }
};

struct ValidationReport {
    std::vector<PropertyResult> properties;
    std::size_t seed_count = 0;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] bool vacuous() const { return seed_count == 0; }
};

/**
 * Runs the oracle-backed property suite on `count` seeded instances per property:
 *  - phase alignment vs a 256 x 256 phase grid
 *  - conic solver feasibility and dominance over random feasible points
 *  - conic solver KKT complementary slackness
 *  - single-antenna closed form vs the general conic solver
 *  - power optimizer vs a 10^4-point grid
 *  - alternating maximization: monotone, convergent, feasible traces
 *  - closed-form optimum dominating alternating maximization and random search
 * Instance i uses seed derive_seed(base_seed, i).
 */
ValidationReport run_validation(std::size_t count, std::uint64_t base_seed = 0, const SolverHooks& hooks = {});

} // namespace risee

#endif
