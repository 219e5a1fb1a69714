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
#include "risee/model.hpp"
#include "risee/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace risee;

namespace {

ChannelPair scalar_channel(cdouble h, cdouble g)
{
    return {CMatrix::Constant(1, 1, h), CMatrix::Constant(1, 1, g)};
}

LinkConfig scalar_config(double phase, cdouble q, cdouble w, double p)
{
    return {RVector::Constant(1, phase), CVector::Constant(1, q), CVector::Constant(1, w), p};
}

/// B = 1 Hz with delta * sigma^2 = 1: 0 dB path loss and N0 = 30 dBm/Hz = 1 W/Hz.
SystemParams unit_params()
{
    SystemParams p;
    p.bandwidth_hz = 1.0;
    p.path_loss_db = 0.0;
    p.noise_psd_dbm_per_hz = 30.0;
    p.amp_inefficiency = 1.0;
    p.static_power_w = 1.0;
    p.max_tx_power_w = 1.0;
    return p;
}

// Fixed 3-element, 2x2 instance; the expected numbers below were computed with
// 40-digit arithmetic by summing w_r^* G_rn e^{j phi_n} H_nt q_t term by term.
struct FixedInstance {
    ChannelPair channels;
    LinkConfig cfg;
    FixedInstance()
    {
        channels.h.resize(3, 2);
        channels.h << cdouble(1.0, 0.5), cdouble(-0.3, 0.2), cdouble(0.7, -1.1), cdouble(2.0, 0.0),
            cdouble(-0.4, 0.9), cdouble(0.1, -0.6);
        channels.g.resize(2, 3);
        channels.g << cdouble(0.5, 0.5), cdouble(1.2, -0.3), cdouble(-0.8, 0.1), cdouble(0.0, 1.0), cdouble(0.3, 0.3),
            cdouble(1.5, -0.5);
        cfg.phases = (RVector(3) << 0.3, 2.1, 5.0).finished();
        cfg.beamformer = (CVector(2) << cdouble(0.6, 0.0), cdouble(0.0, 0.8)).finished();
        cfg.combiner = (CVector(2) << cdouble(0.5, -0.5), cdouble(0.5, 0.5)).finished();
        cfg.tx_power_w = 2.5;
    }
};

} // namespace

TEST(Model, ZeroPowerGivesZeroEfficiency)
{
    const auto params = unit_params();
    const auto r = evaluate(params, scalar_channel(1.0, 1.0), ExposureCoefficients::isotropic(1, 1.0, 1, 1.0),
                            scalar_config(0.0, 1.0, 1.0, 0.0));
    EXPECT_EQ(r.ee_bits_per_joule, 0.0);
    EXPECT_EQ(r.rate_bps, 0.0);
}

TEST(Model, ScalarToyIsHalfBitPerJoule)
{
    const auto r = evaluate(unit_params(), scalar_channel(1.0, 1.0), ExposureCoefficients::isotropic(1, 1.0, 1, 1.0),
                            scalar_config(0.0, 1.0, 1.0, 1.0));
    EXPECT_NEAR(r.effective_gain, 1.0, 1e-15);
    EXPECT_NEAR(r.ee_bits_per_joule, 0.5, 1e-15);
}

TEST(Model, ReferenceParametersMatchIndependentTranscription)
{
    const FixedInstance inst;
    SystemParams params; // 5 MHz, 110 dB, -174 dBm/Hz, P_c = 30 W
    const auto coeffs = ExposureCoefficients::isotropic(2, 0.5, 2, 0.5);
    const auto r = evaluate(params, inst.channels, coeffs, inst.cfg);
    EXPECT_NEAR(r.effective_gain, 2.0619909750856806702, 1e-12);
    EXPECT_NEAR(r.rate_bps, 56695752.568467426807, 1e-5);
    EXPECT_NEAR(r.ee_bits_per_joule, 1744484.6944143823633, 1e-6);
    EXPECT_NEAR(r.tx_exposure, 0.5 * (0.6 + 0.8), 1e-15);
    EXPECT_NEAR(r.rx_exposure, 0.5 * 2.0 * std::sqrt(0.5), 1e-15);
}

TEST(Model, NoisePowerIsPsdTimesBandwidth)
{
    SystemParams p;
    EXPECT_NEAR(p.noise_power_w() / (std::pow(10.0, -20.4) * 5e6), 1.0, 1e-13);
    EXPECT_NEAR(p.path_loss_linear(), 1e11, 1e-3);
}

TEST(Model, DecibelRoundTrip)
{
    for (double db : {-174.0, -30.0, 0.0, 3.0, 110.0, 250.0})
        EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
}

TEST(Model, WrapPhaseIntoHalfOpenTurn)
{
    EXPECT_DOUBLE_EQ(wrap_phase(-M_PI / 2), 3 * M_PI / 2);
    EXPECT_DOUBLE_EQ(wrap_phase(kTwoPi), 0.0);
    EXPECT_EQ(wrap_phase(-1e-300), 0.0);
    EXPECT_DOUBLE_EQ(wrap_phase(M_PI), M_PI);
}

TEST(Model, DimensionMismatchIsAnError)
{
    const FixedInstance inst;
    LinkConfig bad = inst.cfg;
    bad.beamformer = CVector::Ones(3);
    EXPECT_THROW(evaluate(SystemParams{}, inst.channels, ExposureCoefficients::isotropic(2, 0.5, 2, 0.5), bad),
                 InputError);
    EXPECT_THROW(evaluate(SystemParams{}, inst.channels, ExposureCoefficients::isotropic(3, 0.5, 2, 0.5), inst.cfg),
                 InputError);
}

TEST(Model, NonFiniteChannelIsAnError)
{
    FixedInstance inst;
    inst.channels.g(1, 2) = cdouble(std::nan(""), 0.0);
    EXPECT_THROW(evaluate(SystemParams{}, inst.channels, ExposureCoefficients::isotropic(2, 0.5, 2, 0.5), inst.cfg),
                 InputError);
}

TEST(Model, ParamsValidation)
{
    SystemParams p;
    EXPECT_NO_THROW(p.validate());
    p.amp_inefficiency = 0.5;
    EXPECT_THROW(p.validate(), InputError);
    p = {};
    p.static_power_w = 0.0;
    EXPECT_THROW(p.validate(), InputError);
    p = {};
    p.bandwidth_hz = -1.0;
    EXPECT_THROW(p.validate(), InputError);
}

TEST(Model, IsotropicPredicate)
{
    EXPECT_TRUE(ExposureCoefficients::isotropic(4, 0.25, 3, 0.5).is_isotropic());
    ExposureCoefficients c = ExposureCoefficients::isotropic(4, 0.25, 3, 0.5);
    c.tx(2) = 0.3;
    EXPECT_FALSE(c.is_isotropic());
}

TEST(Feasibility, ZeroConfigurationIsFeasible)
{
    SystemParams params;
    params.tx_exposure_budget = 0.0;
    params.rx_exposure_budget = 0.0;
    const LinkConfig cfg{RVector::Zero(5), CVector::Zero(3), CVector::Zero(2), 0.0};
    EXPECT_TRUE(is_feasible(params, ExposureCoefficients::isotropic(3, 1.0, 2, 1.0), cfg).feasible);
}

TEST(Feasibility, ExposureViolationReportsSlack)
{
    SystemParams params;
    params.tx_exposure_budget = 0.5;
    params.rx_exposure_budget = 10.0;
    LinkConfig cfg{RVector::Zero(2), CVector::Zero(3), CVector::Zero(3), 1.0};
    cfg.beamformer(0) = 1.0;
    const auto report = is_feasible(params, ExposureCoefficients::isotropic(3, 1.0, 3, 1.0), cfg);
    ASSERT_FALSE(report.feasible);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].constraint, "tx_exposure");
    EXPECT_NEAR(report.violations[0].slack, -0.5, 1e-15);

    // The EMF-unaware constraint set ignores exposure.
    EXPECT_TRUE(is_feasible(params, ExposureCoefficients::isotropic(3, 1.0, 3, 1.0), cfg,
                            ConstraintSet::emf_unaware));
}

TEST(Feasibility, PowerAndNormBounds)
{
    SystemParams params;
    params.tx_exposure_budget = 100.0;
    params.rx_exposure_budget = 100.0;
    LinkConfig cfg{RVector::Zero(1), CVector::Constant(2, 0.8), CVector::Constant(1, 1.0), 25.0};
    const auto report = is_feasible(params, ExposureCoefficients::isotropic(2, 1.0, 1, 1.0), cfg);
    ASSERT_EQ(report.violations.size(), 2u);
    EXPECT_EQ(report.violations[0].constraint, "tx_power_max");
    EXPECT_NEAR(report.violations[0].slack, -5.0, 1e-12);
    EXPECT_EQ(report.violations[1].constraint, "beamformer_norm");
    EXPECT_NEAR(report.violations[1].slack, 1.0 - 1.28, 1e-12);
}

// Properties over seeded random instances.

TEST(ModelProperty, EfficiencyIncreasesWithGainAndVanishesAtZeroPower)
{
    Rng rng(7);
    const SystemParams params;
    for (int i = 0; i < 200; ++i) {
        const cdouble h(rng.normal(), rng.normal());
        const double p = params.max_tx_power_w * rng.uniform();
        const auto coeffs = ExposureCoefficients::isotropic(1, 1.0, 1, 1.0);
        const double small = evaluate(params, scalar_channel(h, 1.0), coeffs, scalar_config(0, 1, 1, p)).ee_bits_per_joule;
        const double large =
            evaluate(params, scalar_channel(1.5 * h, 1.0), coeffs, scalar_config(0, 1, 1, p)).ee_bits_per_joule;
        if (p > 0.0 && std::abs(h) > 0.0)
            EXPECT_GT(large, small);
        EXPECT_EQ(evaluate(params, scalar_channel(h, 1.0), coeffs, scalar_config(0, 1, 1, 0.0)).ee_bits_per_joule, 0.0);
        // continuity near p = 0
        EXPECT_LT(evaluate(params, scalar_channel(h, 1.0), coeffs, scalar_config(0, 1, 1, 1e-18)).ee_bits_per_joule,
                  1e-3);
    }
}

TEST(ModelProperty, ExposureIsAbsolutelyHomogeneous)
{
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        RVector c(4);
        CVector q(4);
        for (int k = 0; k < 4; ++k) {
            c(k) = rng.uniform();
            q(k) = cdouble(rng.normal(), rng.normal());
        }
        const double t = 3.0 * rng.uniform();
        EXPECT_NEAR(exposure(c, t * q), t * exposure(c, q), 1e-12 * (1.0 + t * exposure(c, q)));
        EXPECT_NEAR(exposure(c, -q), exposure(c, q), 1e-15 * (1.0 + exposure(c, q)));
    }
}
