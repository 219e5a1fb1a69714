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

#ifndef RISEE_SUBSOLVERS_HPP
#define RISEE_SUBSOLVERS_HPP

#include "risee/model.hpp"

namespace risee {

/// RIS phases maximizing |sum_n conj(g_n) e^{j phi_n} h_n| for g = G^H w, h = H q.
/// phi_n = -arg(conj(g_n) h_n) wrapped to [0, 2pi); a zero term gets phase 0.
RVector optimize_phases(const CVector& g, const CVector& h);

/// max gains.x  s.t.  coeffs.x <= budget,  |x|^2 <= 1,  x >= 0.
struct ConicLinearProblem {
    RVector gains;
    RVector coeffs;
    double budget = 0.0;

    void validate() const;
};

/// Optimal magnitudes together with the KKT multipliers that certify them.
struct ConicSolution {
    RVector x;
    double exposure_multiplier = 0.0; // lambda, for coeffs.x <= budget
    double norm_multiplier = 0.0;     // nu, for |x|^2 <= 1

    [[nodiscard]] double objective(const ConicLinearProblem& prob) const { return prob.gains.dot(x); }
};

/**
 * Global maximizer of a ConicLinearProblem.
 *
 * Stationarity gives x_n = max(0, gains_n - lambda coeffs_n) / (2 nu). The
 * exposure of the normalized direction is non-increasing in lambda, so:
 *  - lambda = 0 feasible: x = gains / |gains| (norm tight only);
 *  - otherwise bisect lambda until the normalized direction meets the budget
 *    (both constraints tight);
 *  - if even the limiting direction at the largest gain/coeff ratio overshoots,
 *    the norm is slack and x is the minimum-norm split of the budget over the
 *    indices attaining that ratio (nu = 0).
 * All-zero gains yield the zero vector.
 */
ConicSolution solve_conic_linear(const ConicLinearProblem& prob);

/// q_n = x_n e^{j arg v_n} with x from solve_conic_linear(|v|, coeffs, budget); v^H q is real and >= 0.
CVector align_and_solve_beamformer(const CVector& v, const RVector& coeffs, double budget);

/// w_n = y_n e^{j arg u_n} with y from solve_conic_linear(|u|, coeffs, budget); w^H u is real and >= 0.
CVector align_and_solve_combiner(const CVector& u, const RVector& coeffs, double budget);

/// Closed-form optimum for isotropic coefficients with budget/coeff <= 1: the whole
/// budget on the first index of maximal gain. Throws PreconditionError when
/// budget_over_coeff > 1 or < 0.
RVector select_single_antenna(const RVector& gains, double budget_over_coeff);

/// max log2(1 + p gain) / (amp_inefficiency p + static_power_w) over 0 <= p <= max_tx_power_w.
struct PowerProblem {
    double gain = 0.0;
    double amp_inefficiency = 1.0;
    double static_power_w = 1.0;
    double max_tx_power_w = 1.0;

    void validate() const;
};

/// The objective of a PowerProblem (bits per Joule per Hz).
double power_objective(const PowerProblem& prob, double p);

/// Bisects the sign of the (strictly decreasing) derivative numerator
/// gain (mu p + Pc) / (1 + p gain) - mu ln(1 + p gain) on [0, P_max].
double optimize_power(const PowerProblem& prob);

} // namespace risee

#endif
