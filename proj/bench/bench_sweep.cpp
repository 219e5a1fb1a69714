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

// Serial reference vs OpenMP sweep, and the closed form against N.

#include "risee/algorithms.hpp"
#include "risee/channel.hpp"
#include "risee/experiments.hpp"

#include <benchmark/benchmark.h>

using namespace risee;

namespace {

SweepSpec bench_spec()
{
    SweepSpec spec;
    spec.axis = SweepAxis::budget_ratio;
    spec.axis_values = {0.4, 0.85, 1.2};
    spec.fixed = 100;
    spec.trials = 16;
    return spec;
}

void BM_SweepSerial(benchmark::State& state)
{
    const SweepSpec spec = bench_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep_serial(spec).table.size());
}
BENCHMARK(BM_SweepSerial)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state)
{
    const SweepSpec spec = bench_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(spec, static_cast<int>(state.range(0))).table.size());
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state)
{
    ChannelModel m;
    m.dims.ris_elements = state.range(0);
    const ChannelPair ch = sample(m, 7);
    const SystemParams params;
    for (auto _ : state)
        benchmark::DoNotOptimize(global_special_case(params, ch, 0.25, 0.25).eval.ee_bits_per_joule);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosedForm)->RangeMultiplier(2)->Range(50, 400)->Complexity(benchmark::oN);

void BM_Alternating(benchmark::State& state)
{
    ChannelModel m;
    m.dims.ris_elements = state.range(0);
    const ChannelPair ch = sample(m, 7);
    const SystemParams params;
    const auto coeffs = ExposureCoefficients::isotropic(4, 0.25, 4, 0.25);
    for (auto _ : state)
        benchmark::DoNotOptimize(alternating_max(params, ch, coeffs).trace.final.ee_bits_per_joule);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Alternating)->RangeMultiplier(2)->Range(50, 400)->Complexity(benchmark::oN);

} // namespace

BENCHMARK_MAIN();
