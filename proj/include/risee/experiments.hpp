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

#ifndef RISEE_EXPERIMENTS_HPP
#define RISEE_EXPERIMENTS_HPP

#include "risee/algorithms.hpp"
#include "risee/channel.hpp"
#include "risee/model.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace risee {

enum class SweepAxis { budget_ratio, ris_elements };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view text);

/// One Monte Carlo campaign. Along budget_ratio the exposure budgets are
/// P_q = value * mean(c) and P_w = value * mean(d) with N = fixed; along
/// ris_elements N = value and the budget ratio is `fixed`.
struct SweepSpec {
    SweepAxis axis = SweepAxis::budget_ratio;
    std::vector<double> axis_values;
    double fixed = 100.0;
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    int trials = 100;
    std::uint64_t master_seed = 1;
    SystemParams params;
    ChannelModel channel; // dims.ris_elements is overridden per axis point
    ExposureCoefficients coeffs = ExposureCoefficients::isotropic(4, 0.25, 4, 0.25);
    AlternatingOptions solver;

    void validate() const;
    /// System parameters and channel model in effect at one axis value.
    [[nodiscard]] SystemParams params_at(double axis_value) const;
    [[nodiscard]] ChannelModel channel_at(double axis_value) const;
    [[nodiscard]] double budget_ratio_at(double axis_value) const;
};

struct TrialRecord {
    Scheme scheme = Scheme::a;
    SweepAxis axis = SweepAxis::budget_ratio;
    double axis_value = 0.0;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t channel_hash = 0;
    double ee_bpj = 0.0;
    double rate_bps = 0.0;
    double tx_exposure = 0.0;
    double rx_exposure = 0.0;
    double tx_power_w = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0;

    /// Field-wise equality; wall_time_s is ignored.
    [[nodiscard]] bool same_outcome(const TrialRecord& other) const;
};

struct AggregateRow {
    Scheme scheme = Scheme::a;
    SweepAxis axis = SweepAxis::budget_ratio;
    double axis_value = 0.0;
    std::uint64_t trials = 0;
    double mean_ee_bpj = 0.0;
    double se_ee_bpj = 0.0;
    double mean_tx_exposure = 0.0;
    double se_tx_exposure = 0.0;
    double mean_rx_exposure = 0.0;
    double se_rx_exposure = 0.0;

    bool operator==(const AggregateRow&) const = default;
};

struct SkippedTrial {
    Scheme scheme = Scheme::a;
    double axis_value = 0.0;
    std::uint64_t trial = 0;
    std::string reason;
};

struct SweepResult {
    std::vector<TrialRecord> records; // axis value, then trial, then SweepSpec::schemes order
    std::vector<AggregateRow> table;  // SweepSpec::schemes order, then axis value
    std::vector<SkippedTrial> skipped;

    [[nodiscard]] const AggregateRow* find(Scheme scheme, double axis_value) const;
};

/// Called after each axis value completes: (index, value, records so far).
using SweepProgress = std::function<void(std::size_t, double, std::size_t)>;

/// Seed of trial `trial` in a campaign; every scheme and axis value uses the same one.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);
/// Seed of the random RIS phases shared by schemes c, d and f in one trial.
std::uint64_t phase_seed(std::uint64_t trial_seed);

/// Scheme options for one channel realization: random phases from
/// phase_seed(seed); a random initialization seeded by solver.init_seed, or by
/// the trial seed when that is 0.
SchemeOptions trial_scheme_options(const AlternatingOptions& solver, std::uint64_t trial_seed);

/// Runs every (axis value, trial, scheme) with trials spread over an OpenMP
/// team of `threads` workers (0 = runtime default). Output does not depend on
/// the thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0, const SweepProgress& progress = {});

/// Single-threaded reference; produces the same records as run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec, const SweepProgress& progress = {});

/// Mean and standard error per (scheme, axis value), in first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records);

inline constexpr std::string_view kTrialCsvHeader =
    "scheme,axis,axis_value,trial,seed,channel_hash,ee_bpj,rate_bps,tx_exposure,rx_exposure,tx_power_w,"
    "iterations,wall_time_s";
inline constexpr std::string_view kAggregateCsvHeader =
    "scheme,axis,axis_value,trials,mean_ee_bpj,se_ee_bpj,mean_tx_exposure,se_tx_exposure,mean_rx_exposure,"
    "se_rx_exposure";

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path);
void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

} // namespace risee

#endif
