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
#include "risee/experiments.hpp"
#include "risee/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace risee;
namespace fs = std::filesystem;

namespace {

SweepSpec small_spec()
{
    SweepSpec spec;
    spec.axis = SweepAxis::budget_ratio;
    spec.axis_values = {0.4, 1.2};
    spec.fixed = 12;
    spec.trials = 4;
    spec.master_seed = 5;
    return spec;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path temp_file(const std::string& name)
{
    return fs::temp_directory_path() / ("risee_test_exp_" + name);
}

} // namespace

TEST(SweepSpec, BudgetsFollowTheRatio)
{
    SweepSpec spec = small_spec();
    const auto p = spec.params_at(0.85);
    EXPECT_DOUBLE_EQ(p.tx_exposure_budget, 0.85 * 0.25);
    EXPECT_DOUBLE_EQ(p.rx_exposure_budget, 0.85 * 0.25);
    EXPECT_EQ(spec.channel_at(0.85).dims.ris_elements, 12);

    spec.axis = SweepAxis::ris_elements;
    spec.fixed = 0.6;
    spec.axis_values = {20, 40};
    EXPECT_EQ(spec.channel_at(40).dims.ris_elements, 40);
    EXPECT_DOUBLE_EQ(spec.budget_ratio_at(40), 0.6);
}

TEST(SweepSpec, RejectsInvalidCampaigns)
{
    SweepSpec spec = small_spec();
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), InputError);
    spec = small_spec();
    spec.axis_values.clear();
    EXPECT_THROW(spec.validate(), InputError);
    spec = small_spec();
    spec.schemes = {Scheme::a, Scheme::a};
    EXPECT_THROW(spec.validate(), InputError);
    spec = small_spec();
    spec.axis = SweepAxis::ris_elements;
    spec.axis_values = {2.5};
    EXPECT_THROW(spec.validate(), InputError);
}

TEST(Sweep, SingleTrialMeanIsTheRecord)
{
    SweepSpec spec = small_spec();
    spec.axis_values = {0.85};
    spec.trials = 1;
    spec.schemes = {Scheme::a};
    const auto res = run_sweep(spec);
    ASSERT_EQ(res.records.size(), 1u);
    ASSERT_EQ(res.table.size(), 1u);
    EXPECT_EQ(res.table[0].mean_ee_bpj, res.records[0].ee_bpj);
    EXPECT_EQ(res.table[0].se_ee_bpj, 0.0);
    EXPECT_EQ(res.table[0].trials, 1u);
}

TEST(Sweep, ParallelMatchesSerialReference)
{
    const SweepSpec spec = small_spec();
    const auto par = run_sweep(spec, 3);
    const auto ser = run_sweep_serial(spec);
    ASSERT_EQ(par.records.size(), ser.records.size());
    for (std::size_t i = 0; i < par.records.size(); ++i)
        EXPECT_TRUE(par.records[i].same_outcome(ser.records[i])) << "record " << i;
    EXPECT_EQ(par.table, ser.table);
    EXPECT_EQ(par.skipped.size(), ser.skipped.size());
}

TEST(Sweep, SpecialCaseSchemesAreLeftOutAboveUnitRatio)
{
    const auto res = run_sweep_serial(small_spec());
    EXPECT_NE(res.find(Scheme::b, 0.4), nullptr);
    EXPECT_EQ(res.find(Scheme::b, 1.2), nullptr);
    EXPECT_EQ(res.find(Scheme::d, 1.2), nullptr);
    EXPECT_NE(res.find(Scheme::a, 1.2), nullptr);
    // 2 values x 4 trials x 6 schemes, minus b and d at 1.2
    EXPECT_EQ(res.records.size(), 2u * 4u * 6u - 2u * 4u);
}

TEST(Sweep, SchemesShareTheTrialChannel)
{
    const auto res = run_sweep_serial(small_spec());
    for (const auto& r : res.records) {
        EXPECT_EQ(r.seed, trial_seed(5, r.trial));
        const auto& first = res.records.front();
        if (r.trial == first.trial)
            EXPECT_EQ(r.channel_hash, first.channel_hash);
    }
}

TEST(Sweep, EmfUnawareDominatesEmfAwarePerTrial)
{
    const auto res = run_sweep_serial(small_spec());
    for (const auto& ra : res.records) {
        if (ra.scheme != Scheme::a)
            continue;
        for (const auto& re : res.records)
            if (re.scheme == Scheme::e && re.trial == ra.trial && re.axis_value == ra.axis_value)
                EXPECT_GE(re.ee_bpj, ra.ee_bpj * (1.0 - 1e-9));
    }
}

TEST(Sweep, Deterministic)
{
    const auto a = run_sweep(small_spec());
    const auto b = run_sweep(small_spec());
    EXPECT_EQ(a.table, b.table);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        EXPECT_TRUE(a.records[i].same_outcome(b.records[i]));
}

TEST(Aggregate, MeanAndStandardError)
{
    std::vector<TrialRecord> recs(3);
    const double ee[] = {1.0, 2.0, 6.0};
    for (int i = 0; i < 3; ++i) {
        recs[i].scheme = Scheme::c;
        recs[i].axis_value = 0.5;
        recs[i].trial = static_cast<std::uint64_t>(i);
        recs[i].ee_bpj = ee[i];
        recs[i].tx_exposure = 0.1;
    }
    const auto rows = aggregate(recs);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(rows[0].mean_ee_bpj, 3.0);
    // sample variance 7, se = sqrt(7 / 3)
    EXPECT_NEAR(rows[0].se_ee_bpj, std::sqrt(7.0 / 3.0), 1e-14);
    EXPECT_EQ(rows[0].mean_tx_exposure, 0.1);
    EXPECT_TRUE(aggregate({}).empty());
}

TEST(FormatDouble, ShortestRoundTrip)
{
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1e300), "1e+300");
    EXPECT_EQ(format_double(0.0), "0");
}

TEST(TrialCsv, EmptySetIsHeaderOnly)
{
    const auto path = temp_file("empty.csv");
    write_trials_csv(path, {});
    EXPECT_EQ(slurp(path), std::string(kTrialCsvHeader) + "\n");
    EXPECT_TRUE(read_trials_csv(path).empty());
    write_aggregate_csv(path, {});
    EXPECT_EQ(slurp(path), std::string(kAggregateCsvHeader) + "\n");
    EXPECT_TRUE(read_aggregate_csv(path).empty());
    fs::remove(path);
}

TEST(TrialCsv, OneRecordRoundTrip)
{
    TrialRecord r;
    r.scheme = Scheme::f;
    r.axis = SweepAxis::ris_elements;
    r.axis_value = 60;
    r.trial = 3;
    r.seed = 0xfedcba9876543210ULL;
    r.channel_hash = 0x0123456789abcdefULL;
    r.ee_bpj = 4.1e6;
    r.rate_bps = 1.3e8;
    r.tx_exposure = 0.7;
    r.rx_exposure = 0.25;
    r.tx_power_w = 3.5;
    r.iterations = 12;
    r.wall_time_s = 0.002;
    const auto path = temp_file("one.csv");
    write_trials_csv(path, {r});
    const std::string text = slurp(path);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_NE(text.find("0123456789abcdef"), std::string::npos);
    const auto back = read_trials_csv(path);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_TRUE(back[0].same_outcome(r));
    EXPECT_EQ(back[0].wall_time_s, r.wall_time_s);
    fs::remove(path);
}

TEST(TrialCsvProperty, ExtremeFloatsRoundTripExactly)
{
    Rng rng(1234);
    std::vector<TrialRecord> recs(10000);
    auto draw = [&]() {
        const double mag = std::pow(10.0, 600.0 * rng.uniform() - 300.0);
        switch (rng.next_u64() % 6) {
        case 0: return 1e-300;
        case 1: return 1e300;
        case 2: return std::numeric_limits<double>::denorm_min();
        case 3: return std::numeric_limits<double>::max();
        default: return mag;
        }
    };
    for (std::size_t i = 0; i < recs.size(); ++i) {
        auto& r = recs[i];
        r.scheme = kAllSchemes[i % 6];
        r.axis_value = draw();
        r.trial = i;
        r.seed = rng.next_u64();
        r.channel_hash = rng.next_u64();
        r.ee_bpj = draw();
        r.rate_bps = draw();
        r.tx_exposure = draw();
        r.rx_exposure = draw();
        r.tx_power_w = draw();
        r.iterations = static_cast<int>(i % 501);
        r.wall_time_s = draw();
    }
    const auto path = temp_file("extreme.csv");
    write_trials_csv(path, recs);
    const auto back = read_trials_csv(path);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        ASSERT_TRUE(back[i].same_outcome(recs[i])) << "row " << i;
        ASSERT_EQ(back[i].wall_time_s, recs[i].wall_time_s);
    }
    fs::remove(path);
}

TEST(AggregateCsv, RoundTrip)
{
    const auto res = run_sweep_serial(small_spec());
    const auto path = temp_file("agg.csv");
    write_aggregate_csv(path, res.table);
    EXPECT_EQ(read_aggregate_csv(path), res.table);
    fs::remove(path);
}

TEST(TrialCsv, MalformedInputNamesTheLine)
{
    const auto path = temp_file("bad.csv");
    {
        std::ofstream f(path);
        f << kTrialCsvHeader << "\n" << "a,budget_ratio,0.5,0,1,00000000000000ff,1,2,3,4,5,6\n";
    }
    try {
        read_trials_csv(path);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    {
        std::ofstream f(path);
        f << "scheme,wrong\n";
    }
    EXPECT_THROW(read_trials_csv(path), IoError);
    fs::remove(path);
    EXPECT_THROW(read_trials_csv(path), IoError);
}
