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

#ifndef RISEE_ORACLES_HPP
#define RISEE_ORACLES_HPP

// Brute-force reference computations. Nothing here calls into the solvers it
// is used to check; they share only the problem data types.

#include "risee/model.hpp"
#include "risee/random.hpp"
#include "risee/subsolvers.hpp"

#include <cstdint>

namespace risee::oracle {

/// max over an steps^N grid of phases of |sum_n conj(g_n) e^{j phi_n} h_n| (N <= 3).
double phase_grid_max(const CVector& g, const CVector& h, int steps);

/// Max of gains.x over the feasible points of the lattice step * Z^n (n <= 3).
/// The last coordinate is set to its largest feasible lattice value, which is
/// where the lattice maximum sits because gains >= 0.
double conic_grid_max(const ConicLinearProblem& prob, double step);

/// Projected gradient ascent; the projection onto {x >= 0, c.x <= b, |x| <= 1}
/// is computed with Dykstra's alternating projections. Returns the objective.
double conic_projected_gradient(const ConicLinearProblem& prob, int iterations, double step);

/// Random point of {x >= 0, c.x <= budget, |x|^2 <= 1}, often on its boundary.
RVector random_feasible_magnitudes(Rng& rng, const RVector& coeffs, double budget);

/// Best objective over `samples` random feasible points.
double conic_random_search(const ConicLinearProblem& prob, int samples, std::uint64_t seed);

/// Max of the power objective over `points` equispaced p in [0, P_max].
double power_grid_max(const PowerProblem& prob, int points);

/// Golden-section maximization of the (unimodal) power objective. Returns the argument.
double power_golden_section(const PowerProblem& prob);

/// Random feasible (Phi, q, w) with p left at 0.
LinkConfig random_feasible_link(Rng& rng, const SystemParams& params, const ExposureCoefficients& coeffs,
                                const ChannelPair& channels);

/// Best energy efficiency over `samples` random feasible (Phi, q, w), each given
/// its own optimal power by golden section.
double link_random_search_ee(const SystemParams& params, const ChannelPair& channels,
                             const ExposureCoefficients& coeffs, int samples, std::uint64_t seed);

} // namespace risee::oracle

#endif
