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

#ifndef RISEE_SWEEP_INTERNAL_HPP
#define RISEE_SWEEP_INTERNAL_HPP

#include "risee/experiments.hpp"

namespace risee::detail {

struct TrialOutput {
    std::vector<TrialRecord> records;
    std::vector<SkippedTrial> skipped;
};

bool scheme_applies(const SweepSpec& spec, Scheme scheme, double axis_value);

/// One channel draw shared by every scheme of the spec.
TrialOutput run_trial(const SweepSpec& spec, double axis_value, std::uint64_t trial);

void append(SweepResult& result, TrialOutput&& out);
void finish(const SweepSpec& spec, SweepResult& result);

} // namespace risee::detail

#endif
