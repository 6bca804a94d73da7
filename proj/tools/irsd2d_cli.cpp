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

// Command-line front end: `run` solves a single fading draw and prints the
// outcome, `sweep` runs a Monte-Carlo parameter sweep into CSV files.

#include <irsd2d/harness.hpp>

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace
{

struct CommonFlags
{
    std::string config_path;
    std::vector<std::string> assignments;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double epsilon = 0.0;
    int max_iter = 0;
};

void add_common(CLI::App *cmd, CommonFlags &f)
{
    cmd->add_option("--config", f.config_path, "Configuration file (key = value, SI units)")->check(CLI::ExistingFile);
    cmd->add_option("--set", f.assignments, "Override one setting, e.g. --set bandwidth=1e6 (repeatable)");
    cmd->add_option("--seed", f.seed, "Random seed of the channel draws and solver streams");
    cmd->add_option("--epsilon", f.epsilon, "Relative stopping threshold of the alternating loop")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-iter", f.max_iter, "Iteration cap of the alternating loop")->check(CLI::NonNegativeNumber);
}

irsd2d::Settings resolve(const CLI::App *cmd, const CommonFlags &f)
{
    irsd2d::Settings s;
    if (!f.config_path.empty())
        s = irsd2d::load_settings(f.config_path);
    for (const auto &a : f.assignments)
        irsd2d::apply_assignment(s, a);
    if (cmd->count("--seed"))
        s.system.seed = f.seed;
    if (cmd->count("--epsilon"))
        s.solver.epsilon = f.epsilon;
    if (cmd->count("--max-iter"))
        s.solver.max_iter = f.max_iter;
    s.system.validate();
    return s;
}

// "bandwidth=1e5,2e5" -> variable and values
void parse_sweep(const std::string &text, irsd2d::SweepSpec &spec)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--sweep expects <variable>=<comma list>, got '" + text + "'");
    spec.variable = irsd2d::parse_variable(irsd2d::detail::trim(std::string_view(text).substr(0, eq)));
    spec.values = irsd2d::detail::parse_list("--sweep", std::string_view(text).substr(eq + 1));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Delay-optimal IRS-assisted D2D cooperative computing: solver and experiment harness"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_scheme = "proposed";
    int run_trial = 0;
    auto *run_cmd = app.add_subcommand("run", "Solve one fading draw and print the result with its iteration trace");
    add_common(run_cmd, run_flags);
    run_cmd->add_option("--scheme", run_scheme,
                        "proposed | partial_no_irs | full_offload | full_offload_no_irs | local_only");
    run_cmd->add_option("--trial", run_trial, "Fading draw index")->check(CLI::NonNegativeNumber);

    CommonFlags sweep_flags;
    std::string sweep_text;
    std::vector<std::string> sweep_schemes;
    std::string sweep_out = "sweep.csv";
    irsd2d::SweepSpec spec;
    auto *sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep of one parameter, written as CSV");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--sweep", sweep_text,
                          "<variable>=<comma list>; variable: bandwidth | task_bits | irs_elements | iterations")
        ->required();
    sweep_cmd->add_option("--trials", spec.trials, "Fading draws per sweep point")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--scheme", sweep_schemes, "Schemes to run (repeatable; default: the four main schemes)");
    sweep_cmd->add_option("--out", sweep_out, "Per-trial CSV; statistics go to <out stem>.summary.csv");
    sweep_cmd->add_option("--jobs", spec.jobs, "Worker threads (output is identical for any value)")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run_cmd->parsed())
        {
            const auto settings = resolve(run_cmd, run_flags);
            irsd2d::run_single(settings, irsd2d::parse_scheme(run_scheme), run_trial, std::cout);
        }
        else if (sweep_cmd->parsed())
        {
            const auto settings = resolve(sweep_cmd, sweep_flags);
            parse_sweep(sweep_text, spec);
            if (!sweep_schemes.empty())
            {
                spec.schemes.clear();
                for (const auto &name : sweep_schemes)
                    spec.schemes.push_back(irsd2d::parse_scheme(name));
            }
            const auto summary = irsd2d::run_sweep(settings, spec, sweep_out);
            std::cout << "rows: " << summary.rows << " -> " << summary.rows_path << '\n'
                      << "summary rows: " << summary.summary_rows << " -> " << summary.summary_path << '\n'
                      << "fallbacks: " << summary.fallbacks << '\n';
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
