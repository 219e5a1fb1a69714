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

#include "risee/config.hpp"
#include "risee/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace risee {

EnvLookup process_environment()
{
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str()))
            return std::string(v);
        return std::nullopt;
    };
}

EnvLookup no_environment()
{
    return [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
}

std::string env_name(std::string_view section, std::string_view key)
{
    std::string name = "RISEE_";
    for (char ch : section)
        name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    name += '_';
    for (char ch : key)
        name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return name;
}

namespace {

constexpr std::pair<std::string_view, std::string_view> kKeys[] = {
    {"system", "bandwidth_hz"},      {"system", "path_loss_db"},       {"system", "noise_psd_dbm_per_hz"},
    {"system", "amp_inefficiency"},  {"system", "static_power_w"},     {"system", "max_tx_power_w"},
    {"exposure", "tx_coeff"},        {"exposure", "rx_coeff"},         {"exposure", "tx_budget_ratio"},
    {"exposure", "rx_budget_ratio"}, {"exposure", "tx_budget"},        {"exposure", "rx_budget"},
    {"channel", "ris_elements"},     {"channel", "tx_antennas"},       {"channel", "rx_antennas"},
    {"channel", "mean_h_re"},        {"channel", "mean_h_im"},         {"channel", "mean_g_re"},
    {"channel", "mean_g_im"},        {"channel", "scatter_variance"},  {"solver", "rel_tol"},
    {"solver", "max_iters"},         {"solver", "init"},               {"solver", "init_seed"},
    {"sweep", "axis"},               {"sweep", "values"},              {"sweep", "schemes"},
    {"sweep", "trials"},             {"sweep", "master_seed"},
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

struct Entry {
    std::string value;
    std::string where;
};

class Settings {
public:
    void set(const std::string& full_key, Entry e) { entries_[full_key] = std::move(e); }
    bool has(const std::string& k) const { return entries_.count(k) != 0; }
    const Entry& at(const std::string& k) const { return entries_.at(k); }

    [[noreturn]] void fail(const std::string& k, const std::string& what) const
    {
        throw ConfigError(entries_.at(k).where + ": " + k + ": " + what);
    }

    double real(const std::string& k, double fallback) const
    {
        if (!has(k))
            return fallback;
        return parse_real(k, at(k).value);
    }

    double real_where(const std::string& k, double fallback, const std::function<bool(double)>& ok,
                      const char* requirement) const
    {
        const double v = real(k, fallback);
        if (has(k) && !ok(v))
            fail(k, std::string("must be ") + requirement + " (got '" + at(k).value + "')");
        return v;
    }

    std::uint64_t u64(const std::string& k, std::uint64_t fallback) const
    {
        if (!has(k))
            return fallback;
        const std::string_view s = trim(at(k).value);
        std::uint64_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            fail(k, "expected a non-negative integer, got '" + at(k).value + "'");
        return v;
    }

    std::vector<double> reals(const std::string& k) const
    {
        std::vector<double> out;
        for (const auto& item : split(at(k).value))
            out.push_back(parse_real(k, item));
        if (out.empty())
            fail(k, "expected a comma-separated list of numbers");
        return out;
    }

    std::vector<std::string> split(const std::string& text) const
    {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = std::min(text.find(',', start), text.size());
            const auto item = trim(std::string_view(text).substr(start, comma - start));
            if (!item.empty())
                out.emplace_back(item);
            start = comma + 1;
        }
        return out;
    }

    std::string text(const std::string& k, const std::string& fallback) const
    {
        return has(k) ? std::string(trim(at(k).value)) : fallback;
    }

private:
    double parse_real(const std::string& k, std::string_view raw) const
    {
        const std::string_view s = trim(raw);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
            fail(k, "expected a finite number, got '" + std::string(raw) + "'");
        return v;
    }

    std::map<std::string, Entry> entries_;
};

bool known_key(std::string_view section, std::string_view key)
{
    return std::any_of(std::begin(kKeys), std::end(kKeys),
                       [&](const auto& k) { return k.first == section && k.second == key; });
}

bool known_section(std::string_view section)
{
    return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const auto& k) { return k.first == section; });
}

Settings read_settings(std::string_view text, std::string_view source, const EnvLookup& env)
{
    Settings settings;
    std::map<std::string, std::size_t> seen;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        const std::string where = std::string(source) + ":" + std::to_string(line_no);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header '" + std::string(line) + "'");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section))
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' appears before any [section]");
        if (!known_key(section, key))
            throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
        const std::string full = section + "." + key;
        if (auto it = seen.find(full); it != seen.end())
            throw ConfigError(where + ": duplicate key '" + full + "' (first set on line "
                              + std::to_string(it->second) + ")");
        seen[full] = line_no;
        if (value.empty())
            throw ConfigError(where + ": empty value for '" + full + "'");
        settings.set(full, {value, where});
    }

    for (const auto& [sec, key] : kKeys) {
        const std::string name = env_name(sec, key);
        if (auto v = env(name)) {
            if (trim(*v).empty())
                throw ConfigError("env " + name + ": empty value");
            settings.set(std::string(sec) + "." + std::string(key), {*v, "env " + name});
        }
    }
    return settings;
}

RVector coefficient_vector(const Settings& s, const std::string& key, Eigen::Index antennas)
{
    if (!s.has(key))
        return RVector::Constant(antennas, 1.0 / static_cast<double>(antennas));
    const auto values = s.reals(key);
    for (double v : values)
        if (v < 0.0)
            s.fail(key, "coefficients must be non-negative");
    if (values.size() == 1)
        return RVector::Constant(antennas, values.front());
    if (static_cast<Eigen::Index>(values.size()) != antennas)
        s.fail(key, "expected 1 or " + std::to_string(antennas) + " coefficients, got "
                        + std::to_string(values.size()));
    return Eigen::Map<const RVector>(values.data(), antennas);
}

double budget(const Settings& s, const std::string& absolute_key, const std::string& ratio_key, double ratio_fallback,
              const RVector& coeffs)
{
    auto non_negative = [](double v) { return v >= 0.0; };
    if (s.has(absolute_key) && s.has(ratio_key))
        s.fail(absolute_key, "conflicts with " + ratio_key + " (" + s.at(ratio_key).where + "); set only one");
    if (s.has(absolute_key))
        return s.real_where(absolute_key, 0.0, non_negative, ">= 0");
    return s.real_where(ratio_key, ratio_fallback, non_negative, ">= 0") * coeffs.mean();
}

} // namespace

RunConfig parse_config(std::string_view text, std::string_view source, const EnvLookup& env)
{
    const Settings s = read_settings(text, source, env);
    auto positive = [](double v) { return v > 0.0; };
    auto any = [](double) { return true; };

    RunConfig cfg;
    SystemParams& p = cfg.params;
    p.bandwidth_hz = s.real_where("system.bandwidth_hz", 5e6, positive, "> 0");
    p.path_loss_db = s.real_where("system.path_loss_db", 110.0, any, "finite");
    p.noise_psd_dbm_per_hz = s.real_where("system.noise_psd_dbm_per_hz", -174.0, any, "finite");
    p.amp_inefficiency = s.real_where("system.amp_inefficiency", 1.0, [](double v) { return v >= 1.0; }, ">= 1");
    p.static_power_w = s.real_where("system.static_power_w", 30.0, positive, "> 0");
    p.max_tx_power_w = s.real_where("system.max_tx_power_w", 20.0, positive, "> 0");

    auto count = [&](const std::string& k, std::uint64_t fallback) {
        const std::uint64_t v = s.u64(k, fallback);
        if (v < 1 || v > (1u << 20))
            s.fail(k, "must be between 1 and 1048576");
        return static_cast<Eigen::Index>(v);
    };
    ChannelModel& ch = cfg.channel;
    ch.dims.ris_elements = count("channel.ris_elements", 100);
    ch.dims.tx_antennas = count("channel.tx_antennas", 4);
    ch.dims.rx_antennas = count("channel.rx_antennas", 4);
    ch.mean_h = {s.real("channel.mean_h_re", 2.0), s.real("channel.mean_h_im", 0.0)};
    ch.mean_g = {s.real("channel.mean_g_re", 2.0), s.real("channel.mean_g_im", 0.0)};
    ch.scatter_variance = s.real_where("channel.scatter_variance", 1.0, [](double v) { return v >= 0.0; }, ">= 0");

    cfg.coeffs.tx = coefficient_vector(s, "exposure.tx_coeff", ch.dims.tx_antennas);
    cfg.coeffs.rx = coefficient_vector(s, "exposure.rx_coeff", ch.dims.rx_antennas);
    const double tx_ratio = s.real("exposure.tx_budget_ratio", 0.85);
    p.tx_exposure_budget = budget(s, "exposure.tx_budget", "exposure.tx_budget_ratio", 0.85, cfg.coeffs.tx);
    p.rx_exposure_budget = budget(s, "exposure.rx_budget", "exposure.rx_budget_ratio", tx_ratio, cfg.coeffs.rx);

    AlternatingOptions& so = cfg.solver;
    so.rel_tol = s.real_where("solver.rel_tol", 1e-8, [](double v) { return v > 0.0 && v < 1.0; }, "in (0, 1)");
    const std::uint64_t iters = s.u64("solver.max_iters", 500);
    if (iters < 1 || iters > 1000000)
        s.fail("solver.max_iters", "must be between 1 and 1000000");
    so.max_iters = static_cast<int>(iters);
    const std::string init = s.text("solver.init", "uniform");
    if (init == "uniform")
        so.init = InitStrategy::uniform_feasible;
    else if (init == "random")
        so.init = InitStrategy::random_feasible;
    else
        s.fail("solver.init", "expected 'uniform' or 'random', got '" + init + "'");
    so.init_seed = s.u64("solver.init_seed", 0);

    SweepSpec& sw = cfg.sweep;
    const std::string axis = s.text("sweep.axis", "budget_ratio");
    if (auto a = parse_axis(axis))
        sw.axis = *a;
    else
        s.fail("sweep.axis", "expected 'budget_ratio' or 'ris_elements', got '" + axis + "'");
    if (s.has("sweep.values")) {
        sw.axis_values = s.reals("sweep.values");
        for (std::size_t i = 1; i < sw.axis_values.size(); ++i)
            if (!(sw.axis_values[i] > sw.axis_values[i - 1]))
                s.fail("sweep.values", "must be strictly increasing");
        for (double v : sw.axis_values) {
            if (v < 0.0)
                s.fail("sweep.values", "must be non-negative");
            if (sw.axis == SweepAxis::ris_elements && (v < 1.0 || v != std::floor(v)))
                s.fail("sweep.values", "ris_elements values must be positive integers");
        }
    } else if (sw.axis == SweepAxis::budget_ratio) {
        sw.axis_values = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
    } else {
        sw.axis_values = {20, 40, 60, 80, 100};
    }
    if (s.has("sweep.schemes")) {
        sw.schemes.clear();
        for (const auto& item : s.split(s.at("sweep.schemes").value)) {
            const auto scheme = parse_scheme(item);
            if (!scheme)
                s.fail("sweep.schemes", "unknown scheme '" + item + "' (expected a..f)");
            if (std::find(sw.schemes.begin(), sw.schemes.end(), *scheme) != sw.schemes.end())
                s.fail("sweep.schemes", "scheme '" + item + "' listed twice");
            sw.schemes.push_back(*scheme);
        }
        if (sw.schemes.empty())
            s.fail("sweep.schemes", "at least one scheme is required");
    }
    const std::uint64_t trials = s.u64("sweep.trials", 100);
    if (trials < 1 || trials > 100000000)
        s.fail("sweep.trials", "must be between 1 and 100000000");
    sw.trials = static_cast<int>(trials);
    sw.master_seed = s.u64("sweep.master_seed", 1);

    // The swept quantity comes from the axis; the other one from [channel]/[exposure].
    sw.fixed = sw.axis == SweepAxis::budget_ratio ? static_cast<double>(ch.dims.ris_elements)
                                                  : p.tx_exposure_budget / cfg.coeffs.tx.mean();
    if (sw.axis == SweepAxis::ris_elements && !std::isfinite(sw.fixed))
        throw ConfigError(std::string(source) + ": ris_elements sweep needs non-zero transmit coefficients");
    sw.params = p;
    sw.channel = ch;
    sw.coeffs = cfg.coeffs;
    sw.solver = so;

    try {
        p.validate();
        ch.validate();
        cfg.coeffs.validate(ch.dims.tx_antennas, ch.dims.rx_antennas);
    } catch (const InputError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const EnvLookup& env)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str(), path.string(), env);
}

RunConfig default_config(const EnvLookup& env) { return parse_config("", "<defaults>", env); }

} // namespace risee
