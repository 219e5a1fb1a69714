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

#include "risee/experiments.hpp"
#include "risee/error.hpp"
#include "risee/random.hpp"
#include "sweep_internal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace risee {

std::string_view to_string(SweepAxis axis)
{
    return axis == SweepAxis::budget_ratio ? "budget_ratio" : "ris_elements";
}

std::optional<SweepAxis> parse_axis(std::string_view text)
{
    if (text == "budget_ratio")
        return SweepAxis::budget_ratio;
    if (text == "ris_elements")
        return SweepAxis::ris_elements;
    return std::nullopt;
}

void SweepSpec::validate() const
{
    if (axis_values.empty())
        throw InputError("SweepSpec: axis_values must not be empty");
    for (std::size_t i = 1; i < axis_values.size(); ++i)
        if (!(axis_values[i] > axis_values[i - 1]))
            throw InputError("SweepSpec: axis_values must be strictly increasing");
    if (trials < 1)
        throw InputError("SweepSpec: trials must be >= 1");
    if (schemes.empty())
        throw InputError("SweepSpec: at least one scheme is required");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        if (std::find(schemes.begin() + static_cast<std::ptrdiff_t>(i) + 1, schemes.end(), schemes[i]) != schemes.end())
            throw InputError("SweepSpec: schemes must not repeat");
    if (axis == SweepAxis::ris_elements) {
        for (double v : axis_values)
            if (!(v >= 1.0) || v != std::floor(v))
                throw InputError("SweepSpec: ris_elements values must be positive integers");
        if (!(fixed >= 0.0))
            throw InputError("SweepSpec: fixed budget ratio must be >= 0");
    } else {
        if (!(axis_values.front() >= 0.0))
            throw InputError("SweepSpec: budget ratios must be >= 0");
        if (!(fixed >= 1.0) || fixed != std::floor(fixed))
            throw InputError("SweepSpec: fixed ris_elements must be a positive integer");
    }
    params.validate();
    channel.validate();
    coeffs.validate(channel.dims.tx_antennas, channel.dims.rx_antennas);
    solver.validate();
}

double SweepSpec::budget_ratio_at(double axis_value) const
{
    return axis == SweepAxis::budget_ratio ? axis_value : fixed;
}

SystemParams SweepSpec::params_at(double axis_value) const
{
    SystemParams p = params;
    const double ratio = budget_ratio_at(axis_value);
    p.tx_exposure_budget = ratio * coeffs.tx.mean();
    p.rx_exposure_budget = ratio * coeffs.rx.mean();
    return p;
}

ChannelModel SweepSpec::channel_at(double axis_value) const
{
    ChannelModel m = channel;
    m.dims.ris_elements = static_cast<Eigen::Index>(axis == SweepAxis::ris_elements ? axis_value : fixed);
    return m;
}

bool TrialRecord::same_outcome(const TrialRecord& o) const
{
    return scheme == o.scheme && axis == o.axis && axis_value == o.axis_value && trial == o.trial && seed == o.seed
           && channel_hash == o.channel_hash && ee_bpj == o.ee_bpj && rate_bps == o.rate_bps
           && tx_exposure == o.tx_exposure && rx_exposure == o.rx_exposure && tx_power_w == o.tx_power_w
           && iterations == o.iterations;
}

const AggregateRow* SweepResult::find(Scheme scheme, double axis_value) const
{
    for (const auto& row : table)
        if (row.scheme == scheme && row.axis_value == axis_value)
            return &row;
    return nullptr;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) { return derive_seed(master_seed, trial); }

std::uint64_t phase_seed(std::uint64_t seed) { return derive_seed(seed, 1); }

SchemeOptions trial_scheme_options(const AlternatingOptions& solver, std::uint64_t seed)
{
    SchemeOptions opts;
    opts.alternating = solver;
    if (solver.init_seed == 0)
        opts.alternating.init_seed = derive_seed(seed, 2);
    opts.phase_seed = phase_seed(seed);
    return opts;
}

namespace detail {

bool scheme_applies(const SweepSpec& spec, Scheme scheme, double axis_value)
{
    return !requires_special_case(scheme) || spec.budget_ratio_at(axis_value) <= 1.0;
}

TrialOutput run_trial(const SweepSpec& spec, double axis_value, std::uint64_t trial)
{
    TrialOutput out;
    const SystemParams params = spec.params_at(axis_value);
    const std::uint64_t seed = trial_seed(spec.master_seed, trial);
    const ChannelPair channels = sample(spec.channel_at(axis_value), seed);
    const std::uint64_t hash = channel_hash(channels);

    const SchemeOptions opts = trial_scheme_options(spec.solver, seed);

    for (Scheme scheme : spec.schemes) {
        if (!scheme_applies(spec, scheme, axis_value))
            continue;
        try {
            const auto start = std::chrono::steady_clock::now();
            const SchemeResult r = run_scheme(scheme, params, channels, spec.coeffs, opts);
            const auto stop = std::chrono::steady_clock::now();

            TrialRecord rec;
            rec.scheme = scheme;
            rec.axis = spec.axis;
            rec.axis_value = axis_value;
            rec.trial = trial;
            rec.seed = seed;
            rec.channel_hash = hash;
            rec.ee_bpj = r.eval.ee_bits_per_joule;
            rec.rate_bps = r.eval.rate_bps;
            rec.tx_exposure = r.eval.tx_exposure;
            rec.rx_exposure = r.eval.rx_exposure;
            rec.tx_power_w = r.config.tx_power_w;
            rec.iterations = r.iterations;
            rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
            out.records.push_back(rec);
        } catch (const std::exception& e) {
            out.skipped.push_back({scheme, axis_value, trial, e.what()});
        }
    }
    return out;
}

void append(SweepResult& result, TrialOutput&& out)
{
    std::move(out.records.begin(), out.records.end(), std::back_inserter(result.records));
    std::move(out.skipped.begin(), out.skipped.end(), std::back_inserter(result.skipped));
}

void finish(const SweepSpec& spec, SweepResult& result)
{
    // Regroup the axis-major aggregate into SweepSpec::schemes order.
    std::vector<AggregateRow> rows = aggregate(result.records);
    for (Scheme scheme : spec.schemes)
        for (const auto& row : rows)
            if (row.scheme == scheme)
                result.table.push_back(row);
}

} // namespace detail

SweepResult run_sweep_serial(const SweepSpec& spec, const SweepProgress& progress)
{
    spec.validate();
    SweepResult result;
    for (std::size_t i = 0; i < spec.axis_values.size(); ++i) {
        const double value = spec.axis_values[i];
        for (int t = 0; t < spec.trials; ++t)
            detail::append(result, detail::run_trial(spec, value, static_cast<std::uint64_t>(t)));
        if (progress)
            progress(i, value, result.records.size());
    }
    detail::finish(spec, result);
    return result;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records)
{
    struct Accumulator {
        AggregateRow row;
        double min_ee = INFINITY, max_ee = -INFINITY;
        double min_tx = INFINITY, max_tx = -INFINITY;
        double min_rx = INFINITY, max_rx = -INFINITY;
        double m2_ee = 0.0, m2_tx = 0.0, m2_rx = 0.0;
    };
    std::vector<Accumulator> acc;
    std::map<std::pair<int, double>, std::size_t> index;

    // Welford updates keep the mean exact when all samples coincide.
    auto update = [](double x, std::uint64_t k, double& mean, double& m2, double& lo, double& hi) {
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    };

    for (const auto& r : records) {
        const auto key = std::make_pair(static_cast<int>(r.scheme), r.axis_value);
        auto [it, inserted] = index.try_emplace(key, acc.size());
        if (inserted) {
            acc.emplace_back();
            acc.back().row.scheme = r.scheme;
            acc.back().row.axis = r.axis;
            acc.back().row.axis_value = r.axis_value;
        }
        Accumulator& a = acc[it->second];
        const std::uint64_t k = ++a.row.trials;
        update(r.ee_bpj, k, a.row.mean_ee_bpj, a.m2_ee, a.min_ee, a.max_ee);
        update(r.tx_exposure, k, a.row.mean_tx_exposure, a.m2_tx, a.min_tx, a.max_tx);
        update(r.rx_exposure, k, a.row.mean_rx_exposure, a.m2_rx, a.min_rx, a.max_rx);
    }

    std::vector<AggregateRow> rows;
    rows.reserve(acc.size());
    for (auto& a : acc) {
        const auto n = static_cast<double>(a.row.trials);
        auto std_error = [n](double m2) { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; };
        a.row.mean_ee_bpj = std::clamp(a.row.mean_ee_bpj, a.min_ee, a.max_ee);
        a.row.mean_tx_exposure = std::clamp(a.row.mean_tx_exposure, a.min_tx, a.max_tx);
        a.row.mean_rx_exposure = std::clamp(a.row.mean_rx_exposure, a.min_rx, a.max_rx);
        a.row.se_ee_bpj = std_error(a.m2_ee);
        a.row.se_tx_exposure = std_error(a.m2_tx);
        a.row.se_rx_exposure = std_error(a.m2_rx);
        rows.push_back(a.row);
    }
    return rows;
}

} // namespace risee
