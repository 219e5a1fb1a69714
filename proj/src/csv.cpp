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

#include <charconv>
#include <fstream>
#include <sstream>

namespace risee {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string hex16(std::uint64_t v)
{
    char buf[17];
    const auto res = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open for writing: " + path.string());
    return os;
}

void close_out(std::ofstream& os, const std::filesystem::path& path)
{
    os.flush();
    if (!os)
        throw IoError("write failed: " + path.string());
}

/// Splits a CSV data line and converts fields with source-anchored errors.
class Row {
public:
    Row(const std::string& line, const std::filesystem::path& path, std::size_t line_no, std::size_t expected)
        : path_(path), line_no_(line_no)
    {
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields_.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (fields_.size() != expected)
            fail("expected " + std::to_string(expected) + " fields, got " + std::to_string(fields_.size()));
    }

    double real(std::size_t i) const
    {
        double v = 0.0;
        parse(i, v, std::chars_format::general);
        return v;
    }

    std::uint64_t u64(std::size_t i, int base = 10) const
    {
        std::uint64_t v = 0;
        const auto& f = fields_[i];
        const auto res = std::from_chars(f.data(), f.data() + f.size(), v, base);
        if (res.ec != std::errc() || res.ptr != f.data() + f.size())
            fail("bad integer in column " + std::to_string(i + 1) + ": '" + f + "'");
        return v;
    }

    Scheme scheme(std::size_t i) const
    {
        const auto s = parse_scheme(fields_[i]);
        if (!s)
            fail("unknown scheme '" + fields_[i] + "'");
        return *s;
    }

    SweepAxis axis(std::size_t i) const
    {
        const auto a = parse_axis(fields_[i]);
        if (!a)
            fail("unknown axis '" + fields_[i] + "'");
        return *a;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw IoError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
    }

private:
    void parse(std::size_t i, double& v, std::chars_format fmt) const
    {
        const auto& f = fields_[i];
        const auto res = std::from_chars(f.data(), f.data() + f.size(), v, fmt);
        if (res.ec != std::errc() || res.ptr != f.data() + f.size())
            fail("bad number in column " + std::to_string(i + 1) + ": '" + f + "'");
    }

    std::vector<std::string> fields_;
    const std::filesystem::path& path_;
    std::size_t line_no_;
};

template <typename Parse>
void read_lines(const std::filesystem::path& path, std::string_view header, Parse&& parse)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(is, line) || line != header)
        throw IoError(path.string() + ":1: missing or unexpected CSV header");
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        parse(line, line_no);
    }
}

} // namespace

void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records)
{
    auto os = open_out(path);
    os << kTrialCsvHeader << '\n';
    for (const auto& r : records) {
        os << to_char(r.scheme) << ',' << to_string(r.axis) << ',' << format_double(r.axis_value) << ',' << r.trial
           << ',' << r.seed << ',' << hex16(r.channel_hash) << ',' << format_double(r.ee_bpj) << ','
           << format_double(r.rate_bps) << ',' << format_double(r.tx_exposure) << ','
           << format_double(r.rx_exposure) << ',' << format_double(r.tx_power_w) << ',' << r.iterations << ','
           << format_double(r.wall_time_s) << '\n';
    }
    close_out(os, path);
}

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path)
{
    std::vector<TrialRecord> out;
    read_lines(path, kTrialCsvHeader, [&](const std::string& line, std::size_t line_no) {
        const Row row(line, path, line_no, 13);
        TrialRecord r;
        r.scheme = row.scheme(0);
        r.axis = row.axis(1);
        r.axis_value = row.real(2);
        r.trial = row.u64(3);
        r.seed = row.u64(4);
        r.channel_hash = row.u64(5, 16);
        r.ee_bpj = row.real(6);
        r.rate_bps = row.real(7);
        r.tx_exposure = row.real(8);
        r.rx_exposure = row.real(9);
        r.tx_power_w = row.real(10);
        r.iterations = static_cast<int>(row.u64(11));
        r.wall_time_s = row.real(12);
        out.push_back(r);
    });
    return out;
}

void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows)
{
    auto os = open_out(path);
    os << kAggregateCsvHeader << '\n';
    for (const auto& r : rows) {
        os << to_char(r.scheme) << ',' << to_string(r.axis) << ',' << format_double(r.axis_value) << ',' << r.trials
           << ',' << format_double(r.mean_ee_bpj) << ',' << format_double(r.se_ee_bpj) << ','
           << format_double(r.mean_tx_exposure) << ',' << format_double(r.se_tx_exposure) << ','
           << format_double(r.mean_rx_exposure) << ',' << format_double(r.se_rx_exposure) << '\n';
    }
    close_out(os, path);
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path)
{
    std::vector<AggregateRow> out;
    read_lines(path, kAggregateCsvHeader, [&](const std::string& line, std::size_t line_no) {
        const Row row(line, path, line_no, 10);
        AggregateRow r;
        r.scheme = row.scheme(0);
        r.axis = row.axis(1);
        r.axis_value = row.real(2);
        r.trials = row.u64(3);
        r.mean_ee_bpj = row.real(4);
        r.se_ee_bpj = row.real(5);
        r.mean_tx_exposure = row.real(6);
        r.se_tx_exposure = row.real(7);
        r.mean_rx_exposure = row.real(8);
        r.se_rx_exposure = row.real(9);
        out.push_back(r);
    });
    return out;
}

} // namespace risee
