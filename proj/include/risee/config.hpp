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

#ifndef RISEE_CONFIG_HPP
#define RISEE_CONFIG_HPP

#include "risee/algorithms.hpp"
#include "risee/channel.hpp"
#include "risee/experiments.hpp"
#include "risee/model.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace risee {

/// Everything a run or sweep needs, resolved and validated.
struct RunConfig {
    SystemParams params;
    ChannelModel channel;
    ExposureCoefficients coeffs;
    AlternatingOptions solver;
    SweepSpec sweep; // carries copies of the four blocks above
};

/// Looks up an environment variable; returns nullopt when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_environment();
EnvLookup no_environment();

/// Environment variable overriding `section.key`: RISEE_<SECTION>_<KEY>, upper-cased.
std::string env_name(std::string_view section, std::string_view key);

/**
 * Parses the sectioned key = value format:
 *
 *   # comment
 *   [system]
 *   bandwidth_hz = 5e6
 *
 * Unknown sections or keys, duplicates and invalid values raise ConfigError
 * with a "source:line: ..." (or "env NAME: ...") prefix. Unset keys take the
 * default values, which reproduce the reference setup. Environment variables
 * override file values.
 */
RunConfig parse_config(std::string_view text, std::string_view source, const EnvLookup& env = no_environment());

RunConfig load_config(const std::filesystem::path& path, const EnvLookup& env = process_environment());

/// The built-in defaults (equivalent to parsing an empty file).
RunConfig default_config(const EnvLookup& env = no_environment());

} // namespace risee

#endif
