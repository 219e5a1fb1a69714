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

#include "risee/error.hpp"
#include "risee/oracles.hpp"
#include "risee/random.hpp"
#include "risee/subsolvers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace risee;

namespace {

CVector random_cvector(Rng& rng, Eigen::Index n)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(rng.normal(), rng.normal());
    return v;
}

cdouble aligned_response(const CVector& g, const CVector& h, const RVector& phases)
{
    cdouble s = 0.0;
    for (Eigen::Index n = 0; n < g.size(); ++n)
        s += std::conj(g(n)) * std::polar(1.0, phases(n)) * h(n);
    return s;
}

ConicLinearProblem random_conic(Rng& rng, Eigen::Index n)
{
    ConicLinearProblem prob{RVector(n), RVector(n), 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
        prob.gains(i) = 3.0 * rng.uniform();
        prob.coeffs(i) = rng.uniform();
    }
    prob.budget = 1.5 * rng.uniform() * prob.coeffs.sum();
    return prob;
}

void expect_feasible(const ConicLinearProblem& prob, const RVector& x)
{
    EXPECT_TRUE((x.array() >= 0.0).all());
    EXPECT_LE(x.squaredNorm(), 1.0 + 1e-9);
    EXPECT_LE(prob.coeffs.dot(x), prob.budget + 1e-9);
}

} // namespace

// ---- phases ----

TEST(OptimizePhases, UnitEntriesGiveZeroPhase)
{
    const RVector phi = optimize_phases(CVector::Constant(1, 1.0), CVector::Constant(1, 1.0));
    EXPECT_DOUBLE_EQ(phi(0), 0.0);
}

TEST(OptimizePhases, ImaginaryReceiveEntry)
{
    const RVector phi = optimize_phases(CVector::Constant(1, cdouble(0, 1)), CVector::Constant(1, 1.0));
    EXPECT_NEAR(phi(0), M_PI / 2, 1e-15);
}

TEST(OptimizePhases, ZeroTermGetsZeroPhase)
{
    const RVector phi = optimize_phases(CVector::Constant(2, 0.0), CVector::Constant(2, cdouble(0.3, -2)));
    EXPECT_EQ(phi(0), 0.0);
    EXPECT_EQ(phi(1), 0.0);
}

TEST(OptimizePhases, BeatsExhaustivePhaseGrid)
{
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const CVector g = random_cvector(rng, 2);
        const CVector h = random_cvector(rng, 2);
        const RVector phi = optimize_phases(g, h);
        const cdouble s = aligned_response(g, h, phi);
        const double sum_moduli = std::abs(std::conj(g(0)) * h(0)) + std::abs(std::conj(g(1)) * h(1));
        EXPECT_NEAR(std::abs(s), sum_moduli, 1e-10);
        EXPECT_GE(std::abs(s), oracle::phase_grid_max(g, h, 256) - 1e-12);
    }
}

TEST(OptimizePhasesProperty, AlignedSumIsRealNonNegativeAndScaleInvariant)
{
    Rng rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 64);
        const CVector g = random_cvector(rng, n);
        const CVector h = random_cvector(rng, n);
        const RVector phi = optimize_phases(g, h);
        EXPECT_TRUE((phi.array() >= 0.0).all() && (phi.array() < kTwoPi).all());
        const cdouble s = aligned_response(g, h, phi);
        EXPECT_LE(std::abs(s.imag()), 1e-10 * (1.0 + std::abs(s)));
        EXPECT_GE(s.real(), 0.0);

        RVector scale_g(n), scale_h(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            scale_g(i) = 0.01 + 10.0 * rng.uniform();
            scale_h(i) = 0.01 + 10.0 * rng.uniform();
        }
        const RVector scaled = optimize_phases(g.cwiseProduct(scale_g.cast<cdouble>()),
                                               h.cwiseProduct(scale_h.cast<cdouble>()));
        for (Eigen::Index i = 0; i < n; ++i) {
            // equal up to the 0 / 2pi seam
            const double d = std::abs(scaled(i) - phi(i));
            EXPECT_LT(std::min(d, kTwoPi - d), 1e-12);
        }
    }
}

// ---- conic linear problem ----

TEST(SolveConicLinear, FreeCoefficientsGiveCauchySchwarzDirection)
{
    const ConicLinearProblem prob{(RVector(2) << 3, 4).finished(), RVector::Zero(2), 0.1};
    const auto sol = solve_conic_linear(prob);
    EXPECT_NEAR(sol.x(0), 0.6, 1e-15);
    EXPECT_NEAR(sol.x(1), 0.8, 1e-15);
    EXPECT_EQ(sol.exposure_multiplier, 0.0);
}

TEST(SolveConicLinear, ExposureTightNormSlack)
{
    const ConicLinearProblem prob{RVector::Constant(1, 1.0), RVector::Constant(1, 1.0), 0.5};
    const auto sol = solve_conic_linear(prob);
    EXPECT_NEAR(sol.x(0), 0.5, 1e-15);
    EXPECT_EQ(sol.norm_multiplier, 0.0);
}

TEST(SolveConicLinear, IsotropicTightBudgetPutsAllOnBestEntry)
{
    const ConicLinearProblem prob{(RVector(2) << 2, 1).finished(), RVector::Constant(2, 1.0), 0.8};
    const auto sol = solve_conic_linear(prob);
    EXPECT_NEAR(sol.x(0), 0.8, 1e-12);
    EXPECT_NEAR(sol.x(1), 0.0, 1e-12);
    EXPECT_GE(sol.objective(prob), oracle::conic_grid_max(prob, 1e-3) - 1e-12);
    EXPECT_NEAR(sol.objective(prob), oracle::conic_grid_max(prob, 1e-3), 1e-3);
}

TEST(SolveConicLinear, BothConstraintsActiveMatchesProjectedGradient)
{
    const ConicLinearProblem prob{(RVector(2) << 2, 1).finished(), (RVector(2) << 1, 3).finished(), 1.5};
    const auto sol = solve_conic_linear(prob);
    // Intersection of x1 + 3 x2 = 1.5 with the unit circle.
    const double x2 = (9.0 - std::sqrt(31.0)) / 20.0;
    EXPECT_NEAR(sol.x(0), 1.5 - 3.0 * x2, 1e-9);
    EXPECT_NEAR(sol.x(1), x2, 1e-9);
    EXPECT_GT(sol.exposure_multiplier, 0.0);
    EXPECT_GT(sol.norm_multiplier, 0.0);
    EXPECT_NEAR(sol.objective(prob), oracle::conic_projected_gradient(prob, 100000, 1e-3), 1e-4);
}

TEST(SolveConicLinear, ZeroGainsGiveZeroVector)
{
    const ConicLinearProblem prob{RVector::Zero(3), RVector::Ones(3), 1.0};
    EXPECT_EQ(solve_conic_linear(prob).x, RVector::Zero(3));
}

TEST(SolveConicLinear, ZeroBudgetUsesOnlyFreeEntries)
{
    const ConicLinearProblem prob{(RVector(3) << 1, 2, 3).finished(), (RVector(3) << 0, 1, 0).finished(), 0.0};
    const auto sol = solve_conic_linear(prob);
    EXPECT_NEAR(sol.x(0), 1.0 / std::sqrt(10.0), 1e-9);
    EXPECT_NEAR(sol.x(1), 0.0, 1e-9);
    EXPECT_NEAR(sol.x(2), 3.0 / std::sqrt(10.0), 1e-9);

    const ConicLinearProblem costly{(RVector(2) << 1, 2).finished(), RVector::Ones(2), 0.0};
    EXPECT_EQ(solve_conic_linear(costly).x, RVector::Zero(2));
}

TEST(SolveConicLinear, RejectsMalformedProblems)
{
    EXPECT_THROW(solve_conic_linear({RVector::Ones(2), RVector::Ones(3), 1.0}), InputError);
    EXPECT_THROW(solve_conic_linear({RVector(0), RVector(0), 1.0}), InputError);
    EXPECT_THROW(solve_conic_linear({-RVector::Ones(2), RVector::Ones(2), 1.0}), InputError);
    EXPECT_THROW(solve_conic_linear({RVector::Ones(2), -RVector::Ones(2), 1.0}), InputError);
    EXPECT_THROW(solve_conic_linear({RVector::Ones(2), RVector::Ones(2), -1.0}), InputError);
}

TEST(SolveConicLinearProperty, FeasibleAndKktCertified)
{
    Rng rng(31337);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto prob = random_conic(rng, 1 + static_cast<Eigen::Index>(rng.uniform() * 8));
        const auto sol = solve_conic_linear(prob);
        expect_feasible(prob, sol.x);
        EXPECT_GE(sol.exposure_multiplier, 0.0);
        EXPECT_GE(sol.norm_multiplier, 0.0);
        EXPECT_LE(std::abs(sol.exposure_multiplier * (prob.budget - prob.coeffs.dot(sol.x))), 1e-7);
        EXPECT_LE(std::abs(sol.norm_multiplier * (1.0 - sol.x.squaredNorm())), 1e-7);
    }
}

TEST(SolveConicLinearProperty, DominatesRandomFeasiblePoints)
{
    Rng rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        const auto prob = random_conic(rng, 1 + static_cast<Eigen::Index>(rng.uniform() * 8));
        const double best = oracle::conic_random_search(prob, 100000, derive_seed(4242, trial));
        EXPECT_GE(solve_conic_linear(prob).objective(prob), best - 1e-12) << "trial " << trial;
    }
}

// ---- beamformer / combiner ----

TEST(AlignAndSolve, SingleFreeAntenna)
{
    const CVector q = align_and_solve_beamformer(CVector::Constant(1, 1.0), RVector::Zero(1), 0.3);
    EXPECT_NEAR(std::abs(q(0) - 1.0), 0.0, 1e-15);
    const CVector w = align_and_solve_combiner(CVector::Constant(1, 1.0), RVector::Zero(1), 7.0);
    EXPECT_NEAR(std::abs(w(0) - 1.0), 0.0, 1e-15);
}

TEST(AlignAndSolve, PhasesFollowTargetMagnitudesFollowConicSolution)
{
    const CVector v = (CVector(2) << cdouble(-2, 0), cdouble(0, 1)).finished();
    for (const CVector& out : {align_and_solve_beamformer(v, RVector::Zero(2), 1.0),
                               align_and_solve_combiner(v, RVector::Zero(2), 1.0)}) {
        EXPECT_NEAR(std::arg(out(0)), M_PI, 1e-15);
        EXPECT_NEAR(std::arg(out(1)), M_PI / 2, 1e-15);
        EXPECT_NEAR(std::abs(out(0)), 2.0 / std::sqrt(5.0), 1e-15);
        EXPECT_NEAR(std::abs(out(1)), 1.0 / std::sqrt(5.0), 1e-15);
    }
}

TEST(AlignAndSolve, DominatesRandomFeasibleWeights)
{
    Rng rng(8080);
    const CVector v = random_cvector(rng, 3);
    const RVector coeffs = (RVector(3) << 0.2, 0.7, 0.4).finished();
    const double budget = 0.5;
    const CVector q = align_and_solve_beamformer(v, coeffs, budget);
    const CVector w = align_and_solve_combiner(v, coeffs, budget);
    const cdouble vq = v.dot(q);
    const cdouble wv = w.dot(v);
    EXPECT_NEAR(vq.imag(), 0.0, 1e-12);
    EXPECT_GE(vq.real(), 0.0);
    EXPECT_NEAR(wv.imag(), 0.0, 1e-12);
    EXPECT_LE(exposure(coeffs, q), budget + 1e-9);

    double best = 0.0;
    for (int s = 0; s < 100000; ++s) {
        const RVector mag = oracle::random_feasible_magnitudes(rng, coeffs, budget);
        CVector cand(3);
        for (int i = 0; i < 3; ++i)
            cand(i) = std::polar(mag(i), kTwoPi * rng.uniform());
        best = std::max(best, std::abs(v.dot(cand)));
    }
    EXPECT_GE(std::abs(vq), best - 1e-12);
    EXPECT_GE(std::abs(wv), best - 1e-12);
}

// ---- single antenna ----

TEST(SelectSingleAntenna, PicksLargestGain)
{
    const RVector x = select_single_antenna((RVector(3) << 1, 5, 3).finished(), 0.85);
    EXPECT_EQ(x, (RVector(3) << 0, 0.85, 0).finished());
}

TEST(SelectSingleAntenna, TiesGoToLowestIndex)
{
    const RVector x = select_single_antenna((RVector(2) << 2, 2).finished(), 0.5);
    EXPECT_EQ(x, (RVector(2) << 0.5, 0).finished());
}

TEST(SelectSingleAntenna, RatioAboveOneIsAPreconditionViolation)
{
    EXPECT_THROW(select_single_antenna(RVector::Ones(2), 1.0 + 1e-12), PreconditionError);
    EXPECT_THROW(select_single_antenna(RVector::Ones(2), -0.1), PreconditionError);
    EXPECT_NO_THROW(select_single_antenna(RVector::Ones(2), 1.0));
}

TEST(SelectSingleAntennaProperty, MatchesGeneralSolver)
{
    Rng rng(55);
    for (int trial = 0; trial < 500; ++trial) {
        RVector gains(4);
        for (int i = 0; i < 4; ++i)
            gains(i) = 3.0 * rng.uniform();
        const double c = 0.05 + rng.uniform();
        const double closed = gains.dot(select_single_antenna(gains, 0.85));
        const ConicLinearProblem prob{gains, RVector::Constant(4, c), 0.85 * c};
        EXPECT_NEAR(closed, solve_conic_linear(prob).objective(prob), 1e-9);
    }
}

// ---- power ----

TEST(OptimizePower, ZeroGainGivesZeroPower)
{
    EXPECT_EQ(optimize_power({0.0, 1.0, 1.0, 20.0}), 0.0);
}

TEST(OptimizePower, HugeStaticPowerMeansFullPower)
{
    EXPECT_EQ(optimize_power({1.0, 1.0, 1e9, 20.0}), 20.0);
}

TEST(OptimizePower, MatchesDenseGrid)
{
    const PowerProblem prob{10.0, 1.0, 1.0, 20.0};
    const double p = optimize_power(prob);
    double best_p = 0.0, best_f = -1.0;
    const long steps = 20000000; // 1e-6 spacing over [0, 20]
    for (long k = 0; k <= steps; ++k) {
        const double q = 20.0 * static_cast<double>(k) / static_cast<double>(steps);
        const double f = std::log2(1.0 + 10.0 * q) / (q + 1.0);
        if (f > best_f) {
            best_f = f;
            best_p = q;
        }
    }
    EXPECT_NEAR(p, best_p, 1e-5);
    EXPECT_NEAR(power_objective(prob, p), best_f, 1e-10);
    EXPECT_GE(power_objective(prob, p), best_f - 1e-15);
    // stationary point from a 30-digit root solve
    EXPECT_NEAR(p, 0.717436466772480951626897357906, 1e-10);
}

TEST(OptimizePowerProperty, DominatesGrid)
{
    Rng rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        const PowerProblem prob{std::pow(10.0, 10.0 * rng.uniform() - 2.0), 1.0 + 3.0 * rng.uniform(),
                                0.1 + 60.0 * rng.uniform(), 0.1 + 40.0 * rng.uniform()};
        const double p = optimize_power(prob);
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, prob.max_tx_power_w);
        EXPECT_GE(power_objective(prob, p), oracle::power_grid_max(prob, 10000) - 1e-12);
    }
}

TEST(OptimizePower, RejectsMalformedProblems)
{
    EXPECT_THROW(optimize_power({-1.0, 1.0, 1.0, 1.0}), InputError);
    EXPECT_THROW(optimize_power({1.0, 1.0, 0.0, 1.0}), InputError);
}
