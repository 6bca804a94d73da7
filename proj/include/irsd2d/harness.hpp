// SPDX-License-Identifier: Apache-2.0
//
// irsd2d - delay-optimal IRS-assisted D2D cooperative computing
// Copyright (C) 2026 The irsd2d authors
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

#ifndef IRSD2D_HARNESS_HPP
#define IRSD2D_HARNESS_HPP

#include "baselines.hpp"
#include "channel.hpp"
#include "config_io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace irsd2d
{

// Swept quantity. `iterations` runs every trial once and reports the
// bottleneck after each listed iteration count (0 = initial point; a run that
// stopped earlier contributes its final value).
enum class SweepVariable
{
    bandwidth,
    task_bits,
    irs_elements,
    iterations,
};

inline std::string_view variable_name(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::bandwidth:
        return "bandwidth";
    case SweepVariable::task_bits:
        return "task_bits";
    case SweepVariable::irs_elements:
        return "irs_elements";
    case SweepVariable::iterations:
        return "iterations";
    }
    return "unknown";
}

inline SweepVariable parse_variable(std::string_view name)
{
    for (auto v : {SweepVariable::bandwidth, SweepVariable::task_bits, SweepVariable::irs_elements,
                   SweepVariable::iterations})
        if (variable_name(v) == name)
            return v;
    throw std::invalid_argument("unknown sweep variable '" + std::string(name) +
                                "' (expected bandwidth, task_bits, irs_elements or iterations)");
}

struct SweepSpec
{
    SweepVariable variable = SweepVariable::bandwidth;
    std::vector<double> values;
    int trials = 50;
    std::vector<Scheme> schemes{Scheme::proposed, Scheme::partial_no_irs, Scheme::full_offload, Scheme::local_only};
    int jobs = 1; // worker threads; the output does not depend on it

    void validate() const
    {
        if (values.empty())
            throw std::invalid_argument("sweep: no values given.");
        if (trials < 1)
            throw std::invalid_argument("sweep: trials must be >= 1.");
        if (schemes.empty())
            throw std::invalid_argument("sweep: no schemes given.");
        if (jobs < 1)
            throw std::invalid_argument("sweep: jobs must be >= 1.");
        for (double v : values)
        {
            const bool integral = v == std::floor(v);
            switch (variable)
            {
            case SweepVariable::iterations:
                if (!(v >= 0.0) || !integral)
                    throw std::invalid_argument("sweep: iteration counts must be non-negative integers.");
                break;
            case SweepVariable::irs_elements:
                if (!(v >= 1.0) || !integral)
                    throw std::invalid_argument("sweep: irs_elements values must be positive integers.");
                break;
            default:
                if (!(v > 0.0) || !std::isfinite(v))
                    throw std::invalid_argument("sweep: values must be positive.");
            }
        }
    }
};

// One CSV row.
struct SweepRow
{
    Scheme scheme = Scheme::proposed;
    SweepVariable variable = SweepVariable::bandwidth;
    double value = 0.0;
    std::uint64_t seed = 0;
    int trial = 0;
    std::size_t irs_elements = 0;
    double bandwidth = 0.0;
    double task_bits = 0.0;
    double cycles_per_bit = 0.0;
    double max_power = 0.0;
    double delay = 0.0;
    int iterations = 0;
    bool converged = false;
    bool fallback = false;
};

struct SummaryRow
{
    Scheme scheme = Scheme::proposed;
    SweepVariable variable = SweepVariable::bandwidth;
    double value = 0.0;
    int trials = 0;
    double mean_delay = 0.0;
    double stderr_delay = 0.0; // standard error of the mean
    double mean_iterations = 0.0;
    double converged_fraction = 0.0;
    int fallbacks = 0;
};

inline constexpr std::string_view csv_header =
    "scheme,variable,value,seed,trial,N,B,D,C,Pmax,delay_s,iterations,converged,fallback";
inline constexpr std::string_view summary_header =
    "scheme,variable,value,trials,mean_delay_s,stderr_delay_s,mean_iterations,converged_fraction,fallbacks";

// Shortest round-trip decimal form, so files are byte-identical across runs.
inline std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Scenario at one sweep point.
inline SystemConfig config_at(const SystemConfig &base, SweepVariable var, double value)
{
    SystemConfig c = base;
    switch (var)
    {
    case SweepVariable::bandwidth:
        c.bandwidth = value;
        break;
    case SweepVariable::task_bits:
        c.task_bits = value;
        break;
    case SweepVariable::irs_elements:
        c.irs_elements = static_cast<std::size_t>(value);
        break;
    case SweepVariable::iterations:
        break;
    }
    c.validate();
    return c;
}

// One solve of `scheme` on trial `trial` of the scenario; the channel and the
// solver's random streams depend only on (seed, trial).
inline RunResult solve_trial(const SystemConfig &config, const OptimizerOptions &solver, Scheme scheme, int trial)
{
    const ChannelRealization ch = generate_channel(config, static_cast<std::uint64_t>(trial));
    OptimizerOptions opts = solver;
    opts.rng_seed = config.seed;
    opts.rng_stream = static_cast<std::uint64_t>(trial);
    return run_scheme(scheme, config, ch, opts);
}

// All rows of a sweep, ordered by value, then scheme, then trial.
inline std::vector<SweepRow> sweep_rows(const Settings &settings, const SweepSpec &spec)
{
    spec.validate();
    settings.system.validate();
    const bool per_iteration = spec.variable == SweepVariable::iterations;
    const std::size_t points = per_iteration ? 1 : spec.values.size();
    const std::size_t S = spec.schemes.size();
    const auto T = static_cast<std::size_t>(spec.trials);

    std::vector<SystemConfig> configs;
    for (std::size_t i = 0; i < points; ++i)
        configs.push_back(config_at(settings.system, spec.variable, per_iteration ? 0.0 : spec.values[i]));

    // one solve per (point, scheme, trial), in output order
    const std::size_t total = points * S * T;
    std::vector<RunResult> results(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t j = next++; j < total; j = next++)
        {
            const std::size_t point = j / (S * T);
            const std::size_t scheme = (j / T) % S;
            const auto trial = static_cast<int>(j % T);
            try
            {
                results[j] = solve_trial(configs[point], settings.solver, spec.schemes[scheme], trial);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = total;
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), total));
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size() * S * T);
    for (std::size_t v = 0; v < spec.values.size(); ++v)
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t tr = 0; tr < T; ++tr)
            {
                const std::size_t point = per_iteration ? 0 : v;
                const RunResult &r = results[(point * S + s) * T + tr];
                const SystemConfig &c = configs[point];
                SweepRow row;
                row.scheme = spec.schemes[s];
                row.variable = spec.variable;
                row.value = spec.values[v];
                row.seed = c.seed;
                row.trial = static_cast<int>(tr);
                row.irs_elements = c.irs_elements;
                row.bandwidth = c.bandwidth;
                row.task_bits = c.task_bits;
                row.cycles_per_bit = c.cycles_per_bit;
                row.max_power = c.max_power;
                if (per_iteration)
                {
                    const auto &tr_ = r.report.trace;
                    row.delay = tr_[std::min(static_cast<std::size_t>(spec.values[v]), tr_.size() - 1)];
                }
                else
                    row.delay = r.report.bottleneck;
                row.iterations = r.iterations;
                row.converged = r.converged;
                row.fallback = r.fallback;
                rows.push_back(row);
            }
    return rows;
}

inline void write_rows_csv(std::ostream &os, const std::vector<SweepRow> &rows)
{
    os << csv_header << '\n';
    for (const auto &r : rows)
        os << scheme_name(r.scheme) << ',' << variable_name(r.variable) << ',' << format_number(r.value) << ','
           << r.seed << ',' << r.trial << ',' << r.irs_elements << ',' << format_number(r.bandwidth) << ','
           << format_number(r.task_bits) << ',' << format_number(r.cycles_per_bit) << ','
           << format_number(r.max_power) << ',' << format_number(r.delay) << ',' << r.iterations << ','
           << (r.converged ? 1 : 0) << ',' << (r.fallback ? 1 : 0) << '\n';
}

// Per (scheme, value) statistics over trials, in first-appearance order.
inline std::vector<SummaryRow> summarize(const std::vector<SweepRow> &rows)
{
    std::vector<SummaryRow> out;
    std::vector<std::vector<double>> delays;
    for (const auto &r : rows)
    {
        auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow &s) {
            return s.scheme == r.scheme && s.variable == r.variable && s.value == r.value;
        });
        if (it == out.end())
        {
            SummaryRow s;
            s.scheme = r.scheme;
            s.variable = r.variable;
            s.value = r.value;
            out.push_back(s);
            delays.emplace_back();
            it = out.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - out.begin());
        delays[idx].push_back(r.delay);
        it->trials += 1;
        it->mean_iterations += r.iterations;
        it->converged_fraction += r.converged ? 1.0 : 0.0;
        it->fallbacks += r.fallback ? 1 : 0;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        auto &s = out[i];
        const double n = static_cast<double>(s.trials);
        double mean = 0.0;
        for (double d : delays[i])
            mean += d;
        mean /= n;
        double var = 0.0;
        if (s.trials > 1 && std::isfinite(mean))
        {
            for (double d : delays[i])
                var += (d - mean) * (d - mean);
            var /= n - 1.0;
        }
        s.mean_delay = mean;
        s.stderr_delay = std::isfinite(mean) ? std::sqrt(var / n) : mean;
        s.mean_iterations /= n;
        s.converged_fraction /= n;
    }
    return out;
}

inline void write_summary_csv(std::ostream &os, const std::vector<SummaryRow> &rows)
{
    os << summary_header << '\n';
    for (const auto &s : rows)
        os << scheme_name(s.scheme) << ',' << variable_name(s.variable) << ',' << format_number(s.value) << ','
           << s.trials << ',' << format_number(s.mean_delay) << ',' << format_number(s.stderr_delay) << ','
           << format_number(s.mean_iterations) << ',' << format_number(s.converged_fraction) << ',' << s.fallbacks
           << '\n';
}

// "results.csv" -> "results.summary.csv"
inline std::string summary_path_for(const std::string &path)
{
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ".summary.csv";
    return path.substr(0, dot) + ".summary" + path.substr(dot);
}

struct SweepSummary
{
    std::string rows_path;
    std::string summary_path;
    std::size_t rows = 0;
    std::size_t summary_rows = 0;
    int fallbacks = 0;
};

// Runs the sweep and writes the per-trial CSV to `out` and the per-point
// statistics next to it (see summary_path_for).
inline SweepSummary run_sweep(const Settings &settings, const SweepSpec &spec, const std::string &out)
{
    const auto rows = sweep_rows(settings, spec);
    const auto summary = summarize(rows);

    SweepSummary result;
    result.rows_path = out;
    result.summary_path = summary_path_for(out);
    result.rows = rows.size();
    result.summary_rows = summary.size();
    for (const auto &r : rows)
        result.fallbacks += r.fallback ? 1 : 0;

    auto write = [](const std::string &path, auto &&fn) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        fn(f);
        f.flush();
        if (!f)
            throw std::runtime_error("failed writing '" + path + "'");
    };
    write(result.rows_path, [&](std::ostream &os) { write_rows_csv(os, rows); });
    write(result.summary_path, [&](std::ostream &os) { write_summary_csv(os, summary); });
    return result;
}

// Solves one trial and prints the outcome as "key: value" lines, including
// the iteration trace.
inline RunResult run_single(const Settings &settings, Scheme scheme, int trial, std::ostream &os)
{
    if (trial < 0)
        throw std::invalid_argument("run: trial must be non-negative.");
    const SystemConfig &c = settings.system;
    c.validate();
    const RunResult r = solve_trial(c, settings.solver, scheme, trial);

    auto list = [](const std::vector<double> &v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + format_number(v[i]);
        return s + "]";
    };
    os << "scheme: " << scheme_name(scheme) << '\n'
       << "seed: " << c.seed << '\n'
       << "trial: " << trial << '\n'
       << "irs_elements: " << c.irs_elements << '\n'
       << "helpers: " << c.num_helpers() << '\n'
       << "bandwidth_hz: " << format_number(c.bandwidth) << '\n'
       << "task_bits: " << format_number(c.task_bits) << '\n'
       << "feasible: " << (r.feasible ? "true" : "false") << '\n'
       << "delay_s: " << format_number(r.report.bottleneck) << '\n'
       << "per_node_delay_s: " << list(r.report.per_node_delay) << '\n'
       << "task_split_bits: " << list(r.alloc.d) << '\n'
       << "bandwidth_fraction: " << list(r.alloc.b) << '\n'
       << "power_w: " << list(r.alloc.p) << '\n'
       << "iterations: " << r.iterations << '\n'
       << "converged: " << (r.converged ? "true" : "false") << '\n'
       << "fallback: " << (r.fallback ? "true" : "false") << '\n'
       << "trace_s: " << list(r.report.trace) << '\n';
    return r;
}

} // namespace irsd2d

#endif
