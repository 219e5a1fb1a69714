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

#ifndef RISEE_COMMANDS_HPP
#define RISEE_COMMANDS_HPP

#include "risee/algorithms.hpp"
#include "risee/config.hpp"
#include "risee/validation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace risee {

enum ExitCode : int {
    exit_ok = 0,
    exit_runtime_error = 1,
    exit_config_error = 2,
    exit_precondition_error = 3,
    exit_property_failure = 4,
};

struct RunOptions {
    std::optional<std::filesystem::path> config;
    Scheme scheme = Scheme::a;
    std::uint64_t seed = 42;
    std::optional<std::filesystem::path> json;
    std::optional<std::filesystem::path> dump_channel;
    std::optional<std::filesystem::path> load_channel;
};

/// One solve on one channel realization; prints an EvalResult summary.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err, const EnvLookup& env = process_environment());

struct SweepOptions {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    std::optional<int> trials;
    std::optional<std::uint64_t> master_seed;
    int threads = 0;
};

/// Writes <out_dir>/trials.csv and <out_dir>/aggregate.csv.
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err,
              const EnvLookup& env = process_environment());

struct ValidateOptions {
    std::size_t count = 10;
    std::uint64_t seed = 0;
};

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err, const SolverHooks& hooks = {});

} // namespace risee

#endif
