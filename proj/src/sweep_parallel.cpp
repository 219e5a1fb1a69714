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
#include "sweep_internal.hpp"

#include <omp.h>

#include <exception>

namespace risee {

SweepResult run_sweep(const SweepSpec& spec, int threads, const SweepProgress& progress)
{
    spec.validate();
    const int team = threads > 0 ? threads : omp_get_max_threads();

    SweepResult result;
    std::vector<detail::TrialOutput> outputs(static_cast<std::size_t>(spec.trials));
    for (std::size_t i = 0; i < spec.axis_values.size(); ++i) {
        const double value = spec.axis_values[i];
        std::exception_ptr failure;

        #pragma omp parallel for schedule(dynamic) num_threads(team)
        for (int t = 0; t < spec.trials; ++t) {
            try {
                outputs[static_cast<std::size_t>(t)] = detail::run_trial(spec, value, static_cast<std::uint64_t>(t));
            } catch (...) {
                #pragma omp critical(risee_sweep_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);

        // Fold in trial order so completion order never shows in the output.
        for (auto& out : outputs)
            detail::append(result, std::move(out));
        if (progress)
            progress(i, value, result.records.size());
    }
    detail::finish(spec, result);
    return result;
}

} // namespace risee
