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

#include "risee/validation.hpp"
#include "risee/algorithms.hpp"
#include "risee/channel.hpp"
#include "risee/oracles.hpp"
#include "risee/random.hpp"

#include <cmath>
#include <sstream>

namespace risee {

bool ValidationReport::passed() const
{
    for (const auto& p : properties)
        if (!p.passed())
            return false;
    return true;
}

namespace {

CVector random_cvector(Rng& rng, Eigen::Index n)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(rng.normal(), rng.normal());
    return v;
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

/// Records one instance; `check` returns an empty string on success.
template <typename Check>
void run_property(PropertyResult& result, std::size_t count, std::uint64_t base, std::uint64_t salt, Check&& check)
{
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = derive_seed(base ^ salt, i);
        std::string failure;
        try {
            failure = check(seed);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        ++result.instances;
        if (!failure.empty()) {
            if (result.failing_seeds.empty())
                result.first_failure = failure;
            result.failing_seeds.push_back(seed);
        }
    }
}

std::string describe(const char* what, double got, double bound)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << ", bound " << bound;
    return msg.str();
}

} // namespace

ValidationReport run_validation(std::size_t count, std::uint64_t base, const SolverHooks& hooks)
{
    ValidationReport report;
    report.seed_count = count;
    auto add = [&](const char* name) -> PropertyResult& {
        report.properties.push_back({name, 0, {}, {}});
        return report.properties.back();
    };

    run_property(add("phase_alignment_grid"), count, base, 0x01, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        const CVector g = random_cvector(rng, 2);
        const CVector h = random_cvector(rng, 2);
        const RVector phases = hooks.phases(g, h);
        cdouble response = 0.0;
        double aligned = 0.0;
        for (Eigen::Index n = 0; n < 2; ++n) {
            response += std::conj(g(n)) * std::polar(1.0, phases(n)) * h(n);
            aligned += std::abs(std::conj(g(n)) * h(n));
        }
        if (std::abs(response - aligned) > 1e-10)
            return describe("response differs from sum of moduli", std::abs(response), aligned);
        const double grid = oracle::phase_grid_max(g, h, 256);
        if (std::abs(response) < grid - 1e-12)
            return describe("below phase grid maximum", std::abs(response), grid);
        return {};
    });

    run_property(add("conic_random_dominance"), count, base, 0x02, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        const auto prob = random_conic(rng, 1 + static_cast<Eigen::Index>(rng.uniform() * 8));
        const RVector x = hooks.conic(prob).x;
        if ((x.array() < 0.0).any() || x.squaredNorm() > 1.0 + kFeasibilityTol
            || prob.coeffs.dot(x) > prob.budget + kFeasibilityTol)
            return "solution infeasible";
        const double best = oracle::conic_random_search(prob, 10000, derive_seed(seed, 1));
        if (prob.gains.dot(x) < best - 1e-12)
            return describe("dominated by random feasible point", prob.gains.dot(x), best);
        return {};
    });

    run_property(add("conic_kkt_certificate"), count, base, 0x03, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        const auto prob = random_conic(rng, 1 + static_cast<Eigen::Index>(rng.uniform() * 8));
        const ConicSolution sol = hooks.conic(prob);
        const double exposure_cs = sol.exposure_multiplier * (prob.budget - prob.coeffs.dot(sol.x));
        const double norm_cs = sol.norm_multiplier * (1.0 - sol.x.squaredNorm());
        if (sol.exposure_multiplier < 0.0 || sol.norm_multiplier < 0.0)
            return "negative multiplier";
        if (std::abs(exposure_cs) > 1e-7)
            return describe("exposure complementary slackness", exposure_cs, 1e-7);
        if (std::abs(norm_cs) > 1e-7)
            return describe("norm complementary slackness", norm_cs, 1e-7);
        // Stationarity on the support: gains - lambda c - 2 nu x = 0 where x > 0, <= 0 elsewhere.
        for (Eigen::Index i = 0; i < prob.gains.size(); ++i) {
            const double r = prob.gains(i) - sol.exposure_multiplier * prob.coeffs(i)
                             - 2.0 * sol.norm_multiplier * sol.x(i);
            if ((sol.x(i) > 0.0 && std::abs(r) > 1e-6) || (sol.x(i) == 0.0 && r > 1e-6))
                return describe("stationarity residual", r, 1e-6);
        }
        return {};
    });

    run_property(add("single_antenna_equivalence"), count, base, 0x04, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 8);
        const double c = 0.05 + rng.uniform();
        const double ratio = rng.uniform();
        RVector gains(n);
        for (Eigen::Index i = 0; i < n; ++i)
            gains(i) = 3.0 * rng.uniform();
        const double closed = gains.dot(hooks.single_antenna(gains, ratio));
        const ConicLinearProblem prob{gains, RVector::Constant(n, c), ratio * c};
        const double general = gains.dot(hooks.conic(prob).x);
        if (std::abs(closed - general) > 1e-9)
            return describe("closed form vs general solver", closed, general);
        return {};
    });

    run_property(add("power_grid_dominance"), count, base, 0x05, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        const PowerProblem prob{std::pow(10.0, 8.0 * rng.uniform() - 2.0), 1.0 + 4.0 * rng.uniform(),
                                0.1 + 50.0 * rng.uniform(), 0.1 + 40.0 * rng.uniform()};
        const double p = hooks.power(prob);
        if (!(p >= 0.0 && p <= prob.max_tx_power_w))
            return describe("power out of range", p, prob.max_tx_power_w);
        const double grid = oracle::power_grid_max(prob, 10000);
        if (power_objective(prob, p) < grid - 1e-10)
            return describe("below power grid maximum", power_objective(prob, p), grid);
        return {};
    });

    const SystemParams defaults;
    run_property(add("alternating_monotone_feasible"), count, base, 0x06, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        ChannelModel model;
        model.dims = {1 + static_cast<Eigen::Index>(rng.uniform() * 64), 1 + static_cast<Eigen::Index>(rng.uniform() * 8),
                      0};
        model.dims.rx_antennas = model.dims.tx_antennas;
        const ChannelPair channels = sample(model, derive_seed(seed, 1));
        ExposureCoefficients coeffs{RVector(model.dims.tx_antennas), RVector(model.dims.rx_antennas)};
        for (Eigen::Index i = 0; i < coeffs.tx.size(); ++i) {
            coeffs.tx(i) = rng.uniform();
            coeffs.rx(i) = rng.uniform();
        }
        SystemParams params = defaults;
        params.tx_exposure_budget = 1.5 * rng.uniform() * coeffs.tx.sum();
        params.rx_exposure_budget = 1.5 * rng.uniform() * coeffs.rx.sum();
        const auto result = alternating_max(params, channels, coeffs);
        const auto& obj = result.trace.objective;
        for (std::size_t k = 1; k < obj.size(); ++k)
            if (obj[k] < obj[k - 1] - 1e-9 * std::abs(obj[k - 1]))
                return describe("trace decreased", obj[k], obj[k - 1]);
        if (!result.trace.converged)
            return "did not converge within max_iters";
        if (!is_feasible(params, coeffs, result.config))
            return "returned configuration infeasible";
        return {};
    });

    run_property(add("closed_form_dominance"), count, base, 0x07, [&](std::uint64_t seed) -> std::string {
        Rng rng(seed);
        ChannelModel model;
        model.dims = {1 + static_cast<Eigen::Index>(rng.uniform() * 4), 1 + static_cast<Eigen::Index>(rng.uniform() * 3),
                      0};
        model.dims.rx_antennas = model.dims.tx_antennas;
        const ChannelPair channels = sample(model, derive_seed(seed, 1));
        const double c = 1.0 / static_cast<double>(model.dims.tx_antennas);
        SystemParams params = defaults;
        params.tx_exposure_budget = 0.85 * c;
        params.rx_exposure_budget = 0.85 * c;
        const auto coeffs = ExposureCoefficients::isotropic(model.dims.tx_antennas, c, model.dims.rx_antennas, c);
        const double closed = global_special_case(params, channels, c, c).eval.ee_bits_per_joule;
        const double alternating = alternating_max(params, channels, coeffs).trace.final.ee_bits_per_joule;
        const double random = oracle::link_random_search_ee(params, channels, coeffs, 2000, derive_seed(seed, 2));
        if (closed < alternating * (1.0 - 1e-9))
            return describe("closed form below alternating maximization", closed, alternating);
        if (closed < random * (1.0 - 1e-9))
            return describe("closed form below random search", closed, random);
        return {};
    });

    return report;
}

} // namespace risee
