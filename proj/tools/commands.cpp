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
#include "risee/channel.hpp"
#include "risee/error.hpp"
#include "risee/experiments.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>

namespace risee {

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return exit_precondition_error;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config_error;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_runtime_error;
    }
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env)
{
    return path ? load_config(*path, env) : default_config(env);
}

nlohmann::json complex_array(const CVector& v)
{
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back({v(i).real(), v(i).imag()});
    return arr;
}

} // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err, const EnvLookup& env)
{
    return guarded(err, [&] {
        const RunConfig cfg = resolve_config(opts.config, env);

        ChannelPair channels;
        std::uint64_t seed = opts.seed;
        if (opts.load_channel) {
            LoadedChannel loaded = read_channel(*opts.load_channel);
            channels = std::move(loaded.channels);
            seed = loaded.seed;
            if (channels.tx_antennas() != cfg.coeffs.tx.size() || channels.rx_antennas() != cfg.coeffs.rx.size())
                throw ConfigError(opts.load_channel->string()
                                  + ": channel antenna counts do not match the configuration");
        } else {
            channels = sample(cfg.channel, seed);
        }
        if (opts.dump_channel)
            write_channel(*opts.dump_channel, channels, seed);

        const SchemeOptions so = trial_scheme_options(cfg.solver, seed);

        const SchemeResult r = run_scheme(opts.scheme, cfg.params, channels, cfg.coeffs, so);
        const auto constraint_set = is_emf_aware(opts.scheme) ? ConstraintSet::emf_aware : ConstraintSet::emf_unaware;
        const FeasibilityReport feas = is_feasible(cfg.params, cfg.coeffs, r.config, constraint_set);

        out << std::setprecision(10);
        out << "scheme            " << to_char(opts.scheme) << '\n'
            << "seed              " << seed << '\n'
            << "dims (N,N_T,N_R)  " << channels.ris_elements() << ' ' << channels.tx_antennas() << ' '
            << channels.rx_antennas() << '\n'
            << "energy efficiency " << r.eval.ee_bits_per_joule << " bit/J\n"
            << "rate              " << r.eval.rate_bps << " bit/s\n"
            << "effective gain    " << r.eval.effective_gain << '\n'
            << "tx power          " << r.config.tx_power_w << " W\n"
            << "tx exposure       " << r.eval.tx_exposure << " (budget " << cfg.params.tx_exposure_budget << ")\n"
            << "rx exposure       " << r.eval.rx_exposure << " (budget " << cfg.params.rx_exposure_budget << ")\n"
            << "iterations        " << r.iterations << (r.converged ? "" : " (not converged)") << '\n'
            << "feasible          " << (feas.feasible ? "yes" : "no") << '\n';
        for (const auto& v : feas.violations)
            out << "  violated " << v.constraint << " slack " << v.slack << '\n';

        if (opts.json) {
            nlohmann::json j;
            j["scheme"] = std::string(1, to_char(opts.scheme));
            j["seed"] = seed;
            j["channel_hash"] = channel_hash(channels);
            j["dims"] = {channels.ris_elements(), channels.tx_antennas(), channels.rx_antennas()};
            j["ee_bpj"] = r.eval.ee_bits_per_joule;
            j["rate_bps"] = r.eval.rate_bps;
            j["effective_gain"] = r.eval.effective_gain;
            j["tx_power_w"] = r.config.tx_power_w;
            j["tx_exposure"] = r.eval.tx_exposure;
            j["rx_exposure"] = r.eval.rx_exposure;
            j["tx_exposure_budget"] = cfg.params.tx_exposure_budget;
            j["rx_exposure_budget"] = cfg.params.rx_exposure_budget;
            j["iterations"] = r.iterations;
            j["converged"] = r.converged;
            j["feasible"] = feas.feasible;
            j["phases"] = std::vector<double>(r.config.phases.data(), r.config.phases.data() + r.config.phases.size());
            j["beamformer"] = complex_array(r.config.beamformer);
            j["combiner"] = complex_array(r.config.combiner);
            std::ofstream os(*opts.json, std::ios::binary | std::ios::trunc);
            if (!os)
                throw IoError("cannot open for writing: " + opts.json->string());
            os << j.dump(2) << '\n';
        }
        return static_cast<int>(exit_ok);
    });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err, const EnvLookup& env)
{
    return guarded(err, [&] {
        RunConfig cfg = resolve_config(opts.config, env);
        SweepSpec spec = cfg.sweep;
        if (opts.trials) {
            if (*opts.trials < 1)
                throw ConfigError("--trials must be >= 1");
            spec.trials = *opts.trials;
        }
        if (opts.master_seed)
            spec.master_seed = *opts.master_seed;

        std::filesystem::create_directories(opts.out_dir);
        const auto progress = [&](std::size_t i, double value, std::size_t records) {
            out << "[" << (i + 1) << "/" << spec.axis_values.size() << "] " << to_string(spec.axis) << " = "
                << format_double(value) << "  records " << records << '\n';
        };
        const SweepResult result = run_sweep(spec, opts.threads, progress);

        write_trials_csv(opts.out_dir / "trials.csv", result.records);
        write_aggregate_csv(opts.out_dir / "aggregate.csv", result.table);
        if (!result.skipped.empty()) {
            err << "warning: " << result.skipped.size() << " trial(s) skipped; first: scheme "
                << to_char(result.skipped.front().scheme) << " at " << format_double(result.skipped.front().axis_value)
                << " trial " << result.skipped.front().trial << ": " << result.skipped.front().reason << '\n';
        }
        out << "wrote " << (opts.out_dir / "trials.csv").string() << " (" << result.records.size() << " rows) and "
            << (opts.out_dir / "aggregate.csv").string() << " (" << result.table.size() << " rows)\n";
        return static_cast<int>(exit_ok);
    });
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err, const SolverHooks& hooks)
{
    return guarded(err, [&] {
        if (opts.count == 0) {
            err << "warning: seed count is 0; no properties were exercised\n";
            out << "PASS (vacuous)\n";
            return static_cast<int>(exit_ok);
        }
        const ValidationReport report = run_validation(opts.count, opts.seed, hooks);
        for (const auto& p : report.properties) {
            out << (p.passed() ? "PASS " : "FAIL ") << p.name << " (" << p.instances << " instances)";
            if (!p.passed()) {
                out << " failing seeds:";
                for (auto s : p.failing_seeds)
                    out << ' ' << s;
                out << " -- " << p.first_failure;
            }
            out << '\n';
        }
        return static_cast<int>(report.passed() ? exit_ok : exit_property_failure);
    });
}

} // namespace risee
