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

#include "risee/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace risee;

    CLI::App app{"Energy-efficiency optimization of RIS-assisted MIMO links under exposure constraints"};
    app.require_subcommand(1);

    RunOptions run;
    std::string scheme = "a";
    std::string config_path, json_path, dump_path, load_path;
    auto* run_cmd = app.add_subcommand("run", "Solve one sampled channel with one scheme");
    run_cmd->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
    run_cmd->add_option("--scheme", scheme, "Scheme a|b|c|d|e|f")->check(CLI::IsMember({"a", "b", "c", "d", "e", "f"}));
    run_cmd->add_option("--seed", run.seed, "Channel seed");
    run_cmd->add_option("--json", json_path, "Write a JSON summary here");
    run_cmd->add_option("--dump-channel", dump_path, "Save the channel realization");
    run_cmd->add_option("--load-channel", load_path, "Replay a saved channel realization")->check(CLI::ExistingFile);
    run_cmd->add_option("--threads", "Ignored for single runs");

    SweepOptions sweep;
    std::string sweep_config;
    int trials = 0;
    std::uint64_t sweep_seed = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over budget ratio or RIS size");
    sweep_cmd->add_option("--config", sweep_config, "Configuration file")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory for trials.csv and aggregate.csv");
    auto* trials_opt = sweep_cmd->add_option("--trials", trials, "Trials per axis value")->check(CLI::PositiveNumber);
    auto* seed_opt = sweep_cmd->add_option("--seed", sweep_seed, "Master seed");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all available)")
        ->check(CLI::Range(0, 65535));

    ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate", "Run the oracle-backed property suite");
    validate_cmd->add_option("--seeds,--trials", validate.count, "Instances per property");
    validate_cmd->add_option("--seed", validate.seed, "Base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    if (*run_cmd) {
        run.scheme = *parse_scheme(scheme);
        if (!config_path.empty())
            run.config = config_path;
        if (!json_path.empty())
            run.json = json_path;
        if (!dump_path.empty())
            run.dump_channel = dump_path;
        if (!load_path.empty())
            run.load_channel = load_path;
        return cmd_run(run, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
        if (!sweep_config.empty())
            sweep.config = sweep_config;
        if (*trials_opt)
            sweep.trials = trials;
        if (*seed_opt)
            sweep.master_seed = sweep_seed;
        return cmd_sweep(sweep, std::cout, std::cerr);
    }
    return cmd_validate(validate, std::cout, std::cerr);
}
