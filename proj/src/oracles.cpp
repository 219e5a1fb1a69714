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

#include "risee/oracles.hpp"
#include "risee/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace risee::oracle {

double phase_grid_max(const CVector& g, const CVector& h, int steps)
{
    const Eigen::Index n = g.size();
    if (n < 1 || n > 3 || h.size() != n || steps < 1)
        throw InputError("phase_grid_max: supports 1 <= N <= 3 and steps >= 1");

    CVector terms(n);
    for (Eigen::Index i = 0; i < n; ++i)
        terms(i) = std::conj(g(i)) * h(i);

    std::vector<cdouble> rotor(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k)
        rotor[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / steps);

    double best = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        cdouble sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            sum += rotor[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] * terms(i);
        best = std::max(best, std::abs(sum));

        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == steps)
            idx[d++] = 0;
        if (d == idx.size())
            break;
    }
    return best;
}

namespace {

double grid_recurse(const ConicLinearProblem& prob, double step, Eigen::Index dim, double exposure_left,
                    double norm_left, double partial)
{
    const Eigen::Index n = prob.gains.size();
    const double c = prob.coeffs(dim);
    auto max_units = [&](double slack_exp, double slack_norm) -> long {
        if (slack_exp < 0.0 || slack_norm < 0.0)
            return -1;
        double limit = std::sqrt(slack_norm);
        if (c > 0.0)
            limit = std::min(limit, slack_exp / c);
        return static_cast<long>(std::floor(limit / step + 1e-12));
    };

    const long top = max_units(exposure_left, norm_left);
    if (top < 0)
        return -std::numeric_limits<double>::infinity();

    auto feasible = [&](long k) {
        const double x = k * step;
        return c * x <= exposure_left + 1e-15 && x * x <= norm_left + 1e-15;
    };

    if (dim == n - 1) {
        long k = top;
        while (k > 0 && !feasible(k))
            --k;
        return partial + prob.gains(dim) * k * step;
    }

    double best = -std::numeric_limits<double>::infinity();
    for (long k = 0; k <= top; ++k) {
        if (!feasible(k))
            break;
        const double x = k * step;
        best = std::max(best, grid_recurse(prob, step, dim + 1, exposure_left - c * x, norm_left - x * x,
                                           partial + prob.gains(dim) * x));
    }
    return best;
}

/// Euclidean projection onto {x >= 0, c.x <= b, |x| <= 1} by Dykstra's method.
RVector project_feasible(const RVector& y, const RVector& c, double b, int sweeps)
{
    const Eigen::Index n = y.size();
    RVector x = y;
    RVector p1 = RVector::Zero(n), p2 = RVector::Zero(n), p3 = RVector::Zero(n);
    const double cc = c.squaredNorm();
    for (int s = 0; s < sweeps; ++s) {
        RVector z = (x + p1).cwiseMax(0.0);
        p1 = x + p1 - z;
        x = z;

        z = x + p2;
        const double excess = c.dot(z) - b;
        if (excess > 0.0 && cc > 0.0)
            z -= (excess / cc) * c;
        p2 = x + p2 - z;
        x = z;

        z = x + p3;
        const double norm = z.norm();
        if (norm > 1.0)
            z /= norm;
        p3 = x + p3 - z;
        x = z;
    }
    return x;
}

} // namespace

double conic_grid_max(const ConicLinearProblem& prob, double step)
{
    prob.validate();
    if (prob.gains.size() > 3 || !(step > 0.0))
        throw InputError("conic_grid_max: supports at most 3 coordinates and step > 0");
    return grid_recurse(prob, step, 0, prob.budget, 1.0, 0.0);
}

double conic_projected_gradient(const ConicLinearProblem& prob, int iterations, double step)
{
    prob.validate();
    RVector x = RVector::Zero(prob.gains.size());
    double best = 0.0;
    for (int it = 0; it < iterations; ++it) {
        x = project_feasible(x + step * prob.gains, prob.coeffs, prob.budget, 60);
        best = std::max(best, prob.gains.dot(x));
    }
    // Dykstra converges from outside; make the final point strictly feasible.
    x = x.cwiseMax(0.0);
    double scale = 1.0;
    if (x.norm() > 1.0)
        scale = std::min(scale, 1.0 / x.norm());
    if (prob.coeffs.dot(x) > prob.budget)
        scale = std::min(scale, prob.budget / prob.coeffs.dot(x));
    return std::max(prob.gains.dot(scale * x), 0.0);
}

RVector random_feasible_magnitudes(Rng& rng, const RVector& coeffs, double budget)
{
    const Eigen::Index n = coeffs.size();
    RVector x(n);
    // Sparse supports reach the vertices where the linear objective tends to peak.
    const Eigen::Index support = 1 + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        x(i) = rng.uniform();
    if (support < n) {
        for (Eigen::Index dropped = 0; dropped < n - support; ++dropped)
            x(static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n))) = 0.0;
    }
    if (x.sum() == 0.0)
        x(static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n))) = 1.0;

    double limit = 1.0 / x.norm();
    const double cost = coeffs.dot(x);
    if (cost > 0.0)
        limit = std::min(limit, budget / cost);
    const double shrink = rng.uniform() < 0.5 ? 1.0 : rng.uniform();
    return (limit * shrink) * x;
}

double conic_random_search(const ConicLinearProblem& prob, int samples, std::uint64_t seed)
{
    prob.validate();
    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < samples; ++s)
        best = std::max(best, prob.gains.dot(random_feasible_magnitudes(rng, prob.coeffs, prob.budget)));
    return best;
}

double power_grid_max(const PowerProblem& prob, int points)
{
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < points; ++k) {
        const double p = points > 1 ? prob.max_tx_power_w * k / (points - 1) : 0.0;
        best = std::max(best, std::log2(1.0 + p * prob.gain)
                                  / (prob.amp_inefficiency * p + prob.static_power_w));
    }
    return best;
}

double power_golden_section(const PowerProblem& prob)
{
    auto f = [&](double p) {
        return std::log2(1.0 + p * prob.gain) / (prob.amp_inefficiency * p + prob.static_power_w);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = prob.max_tx_power_w;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && b - a > 1e-13 * prob.max_tx_power_w; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    // Unimodal but possibly monotone: compare with the upper endpoint.
    return f(prob.max_tx_power_w) >= f(mid) ? prob.max_tx_power_w : mid;
}

LinkConfig random_feasible_link(Rng& rng, const SystemParams& params, const ExposureCoefficients& coeffs,
                                const ChannelPair& channels)
{
    auto weights = [&](const RVector& c, double budget) {
        const RVector mag = random_feasible_magnitudes(rng, c, budget);
        CVector w(mag.size());
        for (Eigen::Index i = 0; i < mag.size(); ++i)
            w(i) = std::polar(mag(i), kTwoPi * rng.uniform());
        return w;
    };
    LinkConfig cfg;
    cfg.phases.resize(channels.ris_elements());
    for (Eigen::Index n = 0; n < cfg.phases.size(); ++n)
        cfg.phases(n) = kTwoPi * rng.uniform();
    cfg.beamformer = weights(coeffs.tx, params.tx_exposure_budget);
    cfg.combiner = weights(coeffs.rx, params.rx_exposure_budget);
    return cfg;
}

double link_random_search_ee(const SystemParams& params, const ChannelPair& channels,
                             const ExposureCoefficients& coeffs, int samples, std::uint64_t seed)
{
    Rng rng(seed);
    const double sigma2 = std::pow(10.0, (params.noise_psd_dbm_per_hz - 30.0) / 10.0) * params.bandwidth_hz;
    const double delta = std::pow(10.0, params.path_loss_db / 10.0);
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        const LinkConfig cfg = random_feasible_link(rng, params, coeffs, channels);
        // w^H G diag(e^{j phi}) H q by explicit summation
        cdouble response = 0.0;
        for (Eigen::Index r = 0; r < channels.g.rows(); ++r) {
            cdouble row = 0.0;
            for (Eigen::Index n = 0; n < channels.g.cols(); ++n) {
                cdouble hq = 0.0;
                for (Eigen::Index t = 0; t < channels.h.cols(); ++t)
                    hq += channels.h(n, t) * cfg.beamformer(t);
                row += channels.g(r, n) * std::polar(1.0, cfg.phases(n)) * hq;
            }
            response += std::conj(cfg.combiner(r)) * row;
        }
        const PowerProblem prob{std::norm(response) / (delta * sigma2), params.amp_inefficiency,
                                params.static_power_w, params.max_tx_power_w};
        const double p = power_golden_section(prob);
        const double ee = params.bandwidth_hz * std::log2(1.0 + p * prob.gain)
                          / (params.amp_inefficiency * p + params.static_power_w);
        best = std::max(best, ee);
    }
    return best;
}

} // namespace risee::oracle
