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

#ifndef IRSD2D_CONFIG_IO_HPP
#define IRSD2D_CONFIG_IO_HPP

#include "config.hpp"
#include "optimizer.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irsd2d
{

// Scenario plus solver settings, as read from a configuration file.
//
// File format: one "key = value" pair per line, '#' starts a comment, blank
// lines are ignored, SI units throughout. Lists are comma separated; helper
// positions are "x,y" pairs separated by ';'. Keys:
//
//   irs_elements   N                         integer >= 1
//   bandwidth      B [Hz]
//   noise_psd      N0 [W/Hz]
//   max_power      Pmax [W]
//   task_bits      D [bit]
//   cycles_per_bit C [cycles/bit]
//   cpu_freq       f_0, f_1, ..., f_K [Hz]   source first
//   source         x, y [m]
//   irs            x, y [m]
//   helpers        x1, y1; x2, y2; ...      [m]
//   ref_gain       C0, linear path gain at 1 m
//   ref_gain_db    C0 in dB (alternative to ref_gain)
//   path_loss_exp  alpha
//   blocked        1-based helper indices without a direct link, or "none"
//   seed           unsigned integer
//   epsilon        relative stopping threshold of the alternating loop
//   max_iter       iteration cap of the alternating loop
//   randomization_samples   Gaussian randomization draws
//   initial_phase  zeros | random
struct Settings
{
    SystemConfig system;
    OptimizerOptions solver;
};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true)
    {
        const auto next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return out;
}

inline double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("setting '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
    return v;
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("setting '" + std::string(key) + "': '" + std::string(text) +
                                    "' is not a non-negative integer");
    return v;
}

inline std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    for (auto item : split(text, ','))
        out.push_back(parse_double(key, item));
    return out;
}

inline Point2 parse_point(std::string_view key, std::string_view text)
{
    const auto v = parse_list(key, text);
    if (v.size() != 2)
        throw std::invalid_argument("setting '" + std::string(key) + "': expected 'x, y'");
    return {v[0], v[1]};
}

} // namespace detail

// Applies one key/value pair; unknown keys are rejected.
inline void apply_setting(Settings &s, std::string_view key, std::string_view value)
{
    using namespace detail;
    key = trim(key);
    value = trim(value);
    SystemConfig &c = s.system;
    if (key == "irs_elements")
        c.irs_elements = static_cast<std::size_t>(parse_unsigned(key, value));
    else if (key == "bandwidth")
        c.bandwidth = parse_double(key, value);
    else if (key == "noise_psd")
        c.noise_psd = parse_double(key, value);
    else if (key == "max_power")
        c.max_power = parse_double(key, value);
    else if (key == "task_bits")
        c.task_bits = parse_double(key, value);
    else if (key == "cycles_per_bit")
        c.cycles_per_bit = parse_double(key, value);
    else if (key == "cpu_freq")
        c.cpu_freq = parse_list(key, value);
    else if (key == "source")
        c.source = parse_point(key, value);
    else if (key == "irs")
        c.irs = parse_point(key, value);
    else if (key == "helpers")
    {
        c.helpers.clear();
        for (auto item : split(value, ';'))
            c.helpers.push_back(parse_point(key, item));
    }
    else if (key == "ref_gain")
        c.ref_gain = parse_double(key, value);
    else if (key == "ref_gain_db")
        c.ref_gain = db_to_linear(parse_double(key, value));
    else if (key == "path_loss_exp")
        c.path_loss_exp = parse_double(key, value);
    else if (key == "blocked")
    {
        c.blocked.clear();
        if (!value.empty() && value != "none")
            for (auto item : split(value, ','))
                c.blocked.insert(static_cast<std::size_t>(parse_unsigned(key, item)));
    }
    else if (key == "seed")
        c.seed = parse_unsigned(key, value);
    else if (key == "epsilon")
        s.solver.epsilon = parse_double(key, value);
    else if (key == "max_iter")
        s.solver.max_iter = static_cast<int>(parse_unsigned(key, value));
    else if (key == "randomization_samples")
        s.solver.beamforming.randomization_samples = static_cast<int>(parse_unsigned(key, value));
    else if (key == "initial_phase")
    {
        if (value == "zeros")
            s.solver.initial_phase = InitialPhase::zeros;
        else if (value == "random")
            s.solver.initial_phase = InitialPhase::random;
        else
            throw std::invalid_argument("setting 'initial_phase': expected 'zeros' or 'random'");
    }
    else
        throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
}

// Applies "key=value".
inline void apply_assignment(Settings &s, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw std::invalid_argument("expected key=value, got '" + std::string(assignment) + "'");
    apply_setting(s, assignment.substr(0, eq), assignment.substr(eq + 1));
}

// Reads settings on top of `base`; errors carry the 1-based line number.
inline Settings parse_settings(std::istream &in, Settings base = {}, const std::string &origin = "<input>")
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty())
            continue;
        try
        {
            apply_assignment(base, view);
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    base.system.validate();
    return base;
}

inline Settings load_settings(const std::string &path, Settings base = {})
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_settings(in, std::move(base), path);
}

namespace detail
{
inline std::string join(const std::vector<double> &v, const char *sep = ", ")
{
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}
} // namespace detail

// Writes every key in a form parse_settings reads back to the same values.
inline void write_settings(std::ostream &os, const Settings &s)
{
    const SystemConfig &c = s.system;
    os.precision(17);
    os << "irs_elements = " << c.irs_elements << '\n'
       << "bandwidth = " << c.bandwidth << '\n'
       << "noise_psd = " << c.noise_psd << '\n'
       << "max_power = " << c.max_power << '\n'
       << "task_bits = " << c.task_bits << '\n'
       << "cycles_per_bit = " << c.cycles_per_bit << '\n'
       << "cpu_freq = " << detail::join(c.cpu_freq) << '\n'
       << "source = " << c.source.x << ", " << c.source.y << '\n'
       << "irs = " << c.irs.x << ", " << c.irs.y << '\n'
       << "helpers = ";
    for (std::size_t k = 0; k < c.helpers.size(); ++k)
        os << (k ? "; " : "") << c.helpers[k].x << ", " << c.helpers[k].y;
    os << '\n' << "ref_gain = " << c.ref_gain << '\n' << "path_loss_exp = " << c.path_loss_exp << '\n' << "blocked = ";
    if (c.blocked.empty())
        os << "none";
    for (auto it = c.blocked.begin(); it != c.blocked.end(); ++it)
        os << (it == c.blocked.begin() ? "" : ", ") << *it;
    os << '\n'
       << "seed = " << c.seed << '\n'
       << "epsilon = " << s.solver.epsilon << '\n'
       << "max_iter = " << s.solver.max_iter << '\n'
       << "randomization_samples = " << s.solver.beamforming.randomization_samples << '\n'
       << "initial_phase = " << (s.solver.initial_phase == InitialPhase::random ? "random" : "zeros") << '\n';
}

} // namespace irsd2d

#endif
