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

#include "risee/subsolvers.hpp"
#include "risee/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace risee {

RVector optimize_phases(const CVector& g, const CVector& h)
{
    if (g.size() != h.size())
        throw InputError("optimize_phases: g and h must have the same length");
    RVector phases(g.size());
    for (Eigen::Index n = 0; n < g.size(); ++n)
        phases(n) = wrap_phase(-std::arg(std::conj(g(n)) * h(n)));
    return phases;
}

void ConicLinearProblem::validate() const
{
    if (gains.size() < 1 || gains.size() != coeffs.size())
        throw InputError("ConicLinearProblem: gains and coeffs must be non-empty and of equal length");
    if (!gains.allFinite() || (gains.array() < 0.0).any())
        throw InputError("ConicLinearProblem: gains must be finite and non-negative");
    if (!coeffs.allFinite() || (coeffs.array() < 0.0).any())
        throw InputError("ConicLinearProblem: coeffs must be finite and non-negative");
    if (!std::isfinite(budget) || budget < 0.0)
        throw InputError("ConicLinearProblem: budget must be finite and non-negative");
}

namespace {

constexpr double kMultiplierRelTol = 1e-12;
constexpr int kMaxBisections = 400;

RVector shifted_direction(const ConicLinearProblem& prob, double lambda)
{
    return (prob.gains - lambda * prob.coeffs).cwiseMax(0.0);
}

} // namespace

ConicSolution solve_conic_linear(const ConicLinearProblem& prob)
{
    prob.validate();
    const Eigen::Index n = prob.gains.size();

    ConicSolution sol;
    sol.x = RVector::Zero(n);

    const double gain_norm = prob.gains.norm();
    if (gain_norm == 0.0)
        return sol;

    // Exposure constraint inactive: Cauchy-Schwarz direction.
    if (prob.coeffs.dot(prob.gains) / gain_norm <= prob.budget) {
        sol.x = prob.gains / gain_norm;
        sol.norm_multiplier = 0.5 * gain_norm;
        return sol;
    }

    // Largest gain/coeff ratio over costly entries. A positive gain on a free
    // (zero-cost) entry keeps the norm constraint tight for every lambda.
    bool has_free = false;
    double ratio_max = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (prob.coeffs(i) > 0.0)
            ratio_max = std::max(ratio_max, prob.gains(i) / prob.coeffs(i));
        else if (prob.gains(i) > 0.0)
            has_free = true;
    }

    RVector limit_dir = RVector::Zero(n);
    if (!has_free) {
        // As lambda -> ratio_max the direction tends to coeffs restricted to the
        // maximal-ratio set; its exposure |c_T| is the smallest attainable with |x| = 1.
        for (Eigen::Index i = 0; i < n; ++i)
            if (prob.coeffs(i) > 0.0 && prob.gains(i) / prob.coeffs(i) == ratio_max)
                limit_dir(i) = prob.coeffs(i);
        const double limit_norm = limit_dir.norm();
        if (prob.budget < limit_norm) {
            sol.x = (prob.budget / (limit_norm * limit_norm)) * limit_dir;
            sol.exposure_multiplier = ratio_max;
            return sol;
        }
        limit_dir /= limit_norm;
    }

    auto direction_at = [&](double lambda) -> RVector {
        RVector d = shifted_direction(prob, lambda);
        const double norm = d.norm();
        if (norm == 0.0)
            return limit_dir;
        return d / norm;
    };

    double lo = 0.0;
    double hi = ratio_max;
    for (int it = 0; it < kMaxBisections && hi - lo > kMultiplierRelTol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (prob.coeffs.dot(direction_at(mid)) > prob.budget)
            lo = mid;
        else
            hi = mid;
    }

    // hi is on the feasible side of the exposure constraint.
    sol.x = direction_at(hi);
    sol.exposure_multiplier = hi;
    sol.norm_multiplier = 0.5 * shifted_direction(prob, hi).norm();
    return sol;
}

namespace {

CVector align_and_solve(const CVector& target, const RVector& coeffs, double budget)
{
    const ConicLinearProblem prob{target.cwiseAbs(), coeffs, budget};
    const RVector x = solve_conic_linear(prob).x;
    CVector out(target.size());
    for (Eigen::Index i = 0; i < target.size(); ++i)
        out(i) = std::polar(x(i), std::arg(target(i)));
    return out;
}

} // namespace

CVector align_and_solve_beamformer(const CVector& v, const RVector& coeffs, double budget)
{
    return align_and_solve(v, coeffs, budget);
}

CVector align_and_solve_combiner(const CVector& u, const RVector& coeffs, double budget)
{
    return align_and_solve(u, coeffs, budget);
}

RVector select_single_antenna(const RVector& gains, double budget_over_coeff)
{
    if (gains.size() < 1)
        throw InputError("select_single_antenna: gains must be non-empty");
    if (!(budget_over_coeff >= 0.0 && budget_over_coeff <= 1.0)) {
        std::ostringstream msg;
        msg << "select_single_antenna: requires 0 <= budget/coeff <= 1, got " << budget_over_coeff;
        throw PreconditionError(msg.str());
    }
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < gains.size(); ++i)
        if (gains(i) > gains(best))
            best = i;
    RVector x = RVector::Zero(gains.size());
    x(best) = budget_over_coeff;
    return x;
}

void PowerProblem::validate() const
{
    if (!std::isfinite(gain) || gain < 0.0)
        throw InputError("PowerProblem: gain must be finite and non-negative");
    if (!std::isfinite(amp_inefficiency) || amp_inefficiency < 0.0)
        throw InputError("PowerProblem: amp_inefficiency must be finite and non-negative");
    if (!std::isfinite(static_power_w) || static_power_w <= 0.0)
        throw InputError("PowerProblem: static_power_w must be > 0");
    if (!std::isfinite(max_tx_power_w) || max_tx_power_w < 0.0)
        throw InputError("PowerProblem: max_tx_power_w must be finite and non-negative");
}

double power_objective(const PowerProblem& prob, double p)
{
    return std::log2(1.0 + p * prob.gain) / (prob.amp_inefficiency * p + prob.static_power_w);
}

double optimize_power(const PowerProblem& prob)
{
    prob.validate();
    if (prob.gain == 0.0 || prob.max_tx_power_w == 0.0)
        return 0.0;

    const double mu = prob.amp_inefficiency;
    auto slope_sign = [&](double p) {
        const double snr = p * prob.gain;
        return prob.gain * (mu * p + prob.static_power_w) / (1.0 + snr) - mu * std::log1p(snr);
    };

    if (slope_sign(prob.max_tx_power_w) >= 0.0)
        return prob.max_tx_power_w;

    double lo = 0.0;
    double hi = prob.max_tx_power_w;
    const double width = 1e-12 * prob.max_tx_power_w;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (slope_sign(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace risee
