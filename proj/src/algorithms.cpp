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

#include "risee/algorithms.hpp"
#include "risee/error.hpp"
#include "risee/random.hpp"
#include "risee/subsolvers.hpp"

#include <cmath>
#include <sstream>

namespace risee {

void AlternatingOptions::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw InputError("AlternatingOptions: rel_tol must lie in (0, 1)");
    if (max_iters < 1)
        throw InputError("AlternatingOptions: max_iters must be >= 1");
}

CVector initial_weights(const RVector& coeffs, double budget, InitStrategy init, std::uint64_t seed)
{
    const Eigen::Index n = coeffs.size();
    CVector x(n);
    if (init == InitStrategy::uniform_feasible) {
        x.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    } else {
        Rng rng(seed);
        for (Eigen::Index i = 0; i < n; ++i)
            x(i) = cdouble(rng.normal(), rng.normal());
        const double norm = x.norm();
        if (norm > 0.0)
            x /= norm;
        else
            x.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    }
    // Largest scale t <= 1 keeping sum c_n |x_n| <= budget.
    const double unit_exposure = exposure(coeffs, x);
    const double t = unit_exposure > 0.0 ? std::min(1.0, budget / unit_exposure) : 1.0;
    return t * x;
}

namespace {

struct LoopSetup {
    bool emf_aware = true;
    const RVector* fixed_phases = nullptr; // skip the phase update when set
};

CVector unit_norm_update(const CVector& target)
{
    const double norm = target.norm();
    if (norm == 0.0)
        return CVector::Zero(target.size());
    return target / norm;
}

double optimal_power(const SystemParams& params, double surrogate)
{
    const PowerProblem prob{surrogate * surrogate * params.snr_scale(), params.amp_inefficiency,
                            params.static_power_w, params.max_tx_power_w};
    return optimize_power(prob);
}

AlternatingResult alternate(const SystemParams& params, const ChannelPair& channels,
                            const ExposureCoefficients& coeffs, const AlternatingOptions& opts, const LoopSetup& setup)
{
    params.validate();
    channels.validate();
    coeffs.validate(channels.tx_antennas(), channels.rx_antennas());
    opts.validate();

    const Eigen::Index n_tx = channels.tx_antennas();
    const Eigen::Index n_rx = channels.rx_antennas();

    AlternatingResult out;
    LinkConfig& cfg = out.config;
    if (setup.emf_aware) {
        cfg.beamformer = initial_weights(coeffs.tx, params.tx_exposure_budget, opts.init, opts.init_seed);
        cfg.combiner = initial_weights(coeffs.rx, params.rx_exposure_budget, opts.init, derive_seed(opts.init_seed, 1));
    } else {
        cfg.beamformer = initial_weights(RVector::Zero(n_tx), 0.0, opts.init, opts.init_seed);
        cfg.combiner = initial_weights(RVector::Zero(n_rx), 0.0, opts.init, derive_seed(opts.init_seed, 1));
    }
    cfg.phases = setup.fixed_phases ? *setup.fixed_phases : RVector::Zero(channels.ris_elements());

    SolveTrace& trace = out.trace;
    for (int it = 0; it < opts.max_iters; ++it) {
        if (!setup.fixed_phases)
            cfg.phases = optimize_phases(channels.g.adjoint() * cfg.combiner, channels.h * cfg.beamformer);
        const CMatrix cascade = cascaded_channel(channels, cfg.phases);

        const CVector v = cascade.adjoint() * cfg.combiner;
        cfg.beamformer = setup.emf_aware
                             ? align_and_solve_beamformer(v, coeffs.tx, params.tx_exposure_budget)
                             : unit_norm_update(v);

        const CVector u = cascade * cfg.beamformer;
        cfg.combiner = setup.emf_aware ? align_and_solve_combiner(u, coeffs.rx, params.rx_exposure_budget)
                                       : unit_norm_update(u);

        const double objective = std::abs(cfg.combiner.dot(u));
        trace.objective.push_back(objective);
        trace.iterations = it + 1;
        if (it > 0) {
            const double prev = trace.objective[it - 1];
            if (objective - prev <= opts.rel_tol * prev) {
                trace.converged = true;
                break;
            }
        }
    }

    cfg.tx_power_w = optimal_power(params, trace.objective.back());
    trace.final = evaluate(params, channels, coeffs, cfg);
    return out;
}

void require_ratio(double budget, double coeff, const char* side)
{
    const double ratio = budget / coeff;
    if (!(coeff > 0.0) || !(ratio <= 1.0)) {
        std::ostringstream msg;
        msg << "closed-form optimum requires " << side << " budget/coefficient <= 1 (got " << budget << "/"
            << coeff << "); use alternating_max instead";
        throw PreconditionError(msg.str());
    }
}

} // namespace

AlternatingResult alternating_max(const SystemParams& params, const ChannelPair& channels,
                                  const ExposureCoefficients& coeffs, const AlternatingOptions& opts)
{
    return alternate(params, channels, coeffs, opts, LoopSetup{});
}

SpecialCaseResult global_special_case(const SystemParams& params, const ChannelPair& channels, double coeff_c,
                                      double coeff_d)
{
    params.validate();
    channels.validate();
    require_ratio(params.tx_exposure_budget, coeff_c, "P_q/c: transmit");
    require_ratio(params.rx_exposure_budget, coeff_d, "P_w/d: receive");

    const Eigen::Index n_tx = channels.tx_antennas();
    const Eigen::Index n_rx = channels.rx_antennas();

    SpecialCaseResult out;
    out.objective_table = (channels.g.cwiseAbs() * channels.h.cwiseAbs());

    double best = -1.0;
    for (Eigen::Index tx = 0; tx < n_tx; ++tx) {
        for (Eigen::Index rx = 0; rx < n_rx; ++rx) {
            if (out.objective_table(rx, tx) > best) {
                best = out.objective_table(rx, tx);
                out.tx_index = tx;
                out.rx_index = rx;
            }
        }
    }

    const double tx_mag = params.tx_exposure_budget / coeff_c;
    const double rx_mag = params.rx_exposure_budget / coeff_d;
    LinkConfig& cfg = out.config;
    cfg.beamformer = CVector::Zero(n_tx);
    cfg.beamformer(out.tx_index) = tx_mag;
    cfg.combiner = CVector::Zero(n_rx);
    cfg.combiner(out.rx_index) = rx_mag;
    cfg.phases.resize(channels.ris_elements());
    for (Eigen::Index n = 0; n < channels.ris_elements(); ++n)
        cfg.phases(n) = wrap_phase(-std::arg(channels.g(out.rx_index, n) * channels.h(n, out.tx_index)));
    cfg.tx_power_w = optimal_power(params, tx_mag * rx_mag * best);

    out.eval = evaluate(params, channels,
                        ExposureCoefficients::isotropic(n_tx, coeff_c, n_rx, coeff_d), cfg);
    return out;
}

RVector random_phases(Eigen::Index n, std::uint64_t seed)
{
    Rng rng(seed);
    RVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i)
        phases(i) = kTwoPi * rng.uniform();
    return phases;
}

char to_char(Scheme s) { return static_cast<char>('a' + static_cast<int>(s)); }

std::optional<Scheme> parse_scheme(std::string_view text)
{
    if (text.size() != 1 || text[0] < 'a' || text[0] > 'f')
        return std::nullopt;
    return static_cast<Scheme>(text[0] - 'a');
}

bool requires_special_case(Scheme s) { return s == Scheme::b || s == Scheme::d; }

bool uses_random_phases(Scheme s) { return s == Scheme::c || s == Scheme::d || s == Scheme::f; }

bool is_emf_aware(Scheme s) { return s != Scheme::e && s != Scheme::f; }

namespace {

/// Scheme d: with Phi fixed, the best single-antenna pair is the largest entry
/// of the cascaded channel.
SchemeResult special_case_fixed_phases(const SystemParams& params, const ChannelPair& channels, double coeff_c,
                                       double coeff_d, const RVector& phases)
{
    params.validate();
    channels.validate();
    require_ratio(params.tx_exposure_budget, coeff_c, "P_q/c: transmit");
    require_ratio(params.rx_exposure_budget, coeff_d, "P_w/d: receive");

    const CMatrix cascade = cascaded_channel(channels, phases);
    Eigen::Index best_tx = 0;
    Eigen::Index best_rx = 0;
    for (Eigen::Index tx = 0; tx < cascade.cols(); ++tx)
        for (Eigen::Index rx = 0; rx < cascade.rows(); ++rx)
            if (std::abs(cascade(rx, tx)) > std::abs(cascade(best_rx, best_tx))) {
                best_tx = tx;
                best_rx = rx;
            }

    const double tx_mag = params.tx_exposure_budget / coeff_c;
    const double rx_mag = params.rx_exposure_budget / coeff_d;
    SchemeResult out;
    LinkConfig& cfg = out.config;
    cfg.phases = phases;
    cfg.beamformer = CVector::Zero(cascade.cols());
    cfg.beamformer(best_tx) = std::polar(tx_mag, -std::arg(cascade(best_rx, best_tx)));
    cfg.combiner = CVector::Zero(cascade.rows());
    cfg.combiner(best_rx) = rx_mag;
    cfg.tx_power_w = optimal_power(params, tx_mag * rx_mag * std::abs(cascade(best_rx, best_tx)));
    out.eval = evaluate(params, channels,
                        ExposureCoefficients::isotropic(cascade.cols(), coeff_c, cascade.rows(), coeff_d), cfg);
    out.iterations = 1;
    return out;
}

SchemeResult from_alternating(AlternatingResult&& r)
{
    return {std::move(r.config), r.trace.final, r.trace.iterations, r.trace.converged};
}

} // namespace

SchemeResult run_scheme(Scheme scheme, const SystemParams& params, const ChannelPair& channels,
                        const ExposureCoefficients& coeffs, const SchemeOptions& opts)
{
    if (requires_special_case(scheme) && !coeffs.is_isotropic()) {
        std::ostringstream msg;
        msg << "scheme " << to_char(scheme) << " requires isotropic exposure coefficients";
        throw PreconditionError(msg.str());
    }

    RVector phases;
    if (uses_random_phases(scheme)) {
        channels.validate();
        phases = random_phases(channels.ris_elements(), opts.phase_seed);
    }

    switch (scheme) {
    case Scheme::a:
        return from_alternating(alternate(params, channels, coeffs, opts.alternating, {true, nullptr}));
    case Scheme::c:
        return from_alternating(alternate(params, channels, coeffs, opts.alternating, {true, &phases}));
    case Scheme::e:
        return from_alternating(alternate(params, channels, coeffs, opts.alternating, {false, nullptr}));
    case Scheme::f:
        return from_alternating(alternate(params, channels, coeffs, opts.alternating, {false, &phases}));
    case Scheme::b: {
        coeffs.validate(channels.tx_antennas(), channels.rx_antennas());
        SpecialCaseResult r = global_special_case(params, channels, coeffs.tx(0), coeffs.rx(0));
        return {std::move(r.config), r.eval, 1, true};
    }
    case Scheme::d:
        coeffs.validate(channels.tx_antennas(), channels.rx_antennas());
        return special_case_fixed_phases(params, channels, coeffs.tx(0), coeffs.rx(0), phases);
    }
    throw InputError("run_scheme: unknown scheme");
}

} // namespace risee
