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

#ifndef RISEE_ERROR_HPP
#define RISEE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace risee {

/// Malformed input: mismatched dimensions, non-finite entries, out-of-range parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The caller asked for a solver whose structural assumptions do not hold
/// (e.g. the single-antenna closed form with a budget ratio above one).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Configuration text could not be parsed or failed validation. The message is
/// already anchored to its source ("file:line: ..." or "env NAME: ...").
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File I/O failure; message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace risee

#endif
