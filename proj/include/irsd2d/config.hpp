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

#ifndef IRSD2D_CONFIG_HPP
#define IRSD2D_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsd2d
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2 &a, const Point2 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Scenario constants, SI units throughout. Helper indices are 1-based
// (1..K) wherever a "helper index" appears in the API; per-node vectors of
// length K+1 use index 0 for the source.
struct SystemConfig
{
    std::size_t irs_elements = 32;         // N
    double bandwidth = 0.5e6;              // B [Hz]
    double noise_psd = 1e-16;              // N0 [W/Hz]
    double max_power = 1.0;                // Pmax [W]
    double task_bits = 1e6;                // D [bit]
    double cycles_per_bit = 1000.0;        // C [cycles/bit]
    std::vector<double> cpu_freq{1e9, 1.2e9, 1.5e9}; // f_l, index 0 = source [Hz]

    Point2 source{0.0, 0.0};
    Point2 irs{0.0, 5.0};
    std::vector<Point2> helpers{{1.0, 5.0}, {2.0, 4.0}};

    double ref_gain = 1e-3;                // C0, path gain at 1 m (linear, -30 dB)
    double path_loss_exp = 3.0;            // alpha
    std::set<std::size_t> blocked{2};      // helpers without a direct link
    std::uint64_t seed = 1;

    std::size_t num_helpers() const { return helpers.size(); }

    // Large-scale power gain L(d) = C0 * d^-alpha.
    double path_gain(double d) const { return ref_gain * std::pow(d, -path_loss_exp); }

    double helper_freq(std::size_t k) const { return cpu_freq.at(k); }

    void validate() const
    {
        auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
        if (helpers.empty())
            throw std::invalid_argument("SystemConfig: at least one helper is required.");
        if (irs_elements == 0)
            throw std::invalid_argument("SystemConfig: irs_elements must be >= 1.");
        if (!positive(bandwidth))
            throw std::invalid_argument("SystemConfig: bandwidth must be positive.");
        if (!positive(noise_psd))
            throw std::invalid_argument("SystemConfig: noise_psd must be positive.");
        if (!positive(max_power))
            throw std::invalid_argument("SystemConfig: max_power must be positive.");
        if (!positive(task_bits))
            throw std::invalid_argument("SystemConfig: task_bits must be positive.");
        if (!positive(cycles_per_bit))
            throw std::invalid_argument("SystemConfig: cycles_per_bit must be positive.");
        if (cpu_freq.size() != helpers.size() + 1)
            throw std::invalid_argument("SystemConfig: cpu_freq needs one entry for the source plus one per helper.");
        for (double f : cpu_freq)
            if (!positive(f))
                throw std::invalid_argument("SystemConfig: CPU frequencies must be positive.");
        if (!positive(ref_gain))
            throw std::invalid_argument("SystemConfig: ref_gain must be positive.");
        if (!std::isfinite(path_loss_exp) || path_loss_exp < 0.0)
            throw std::invalid_argument("SystemConfig: path_loss_exp must be non-negative.");
        for (std::size_t k : blocked)
            if (k < 1 || k > helpers.size())
                throw std::invalid_argument("SystemConfig: blocked helper index " + std::to_string(k) + " out of range 1.." +
                                            std::to_string(helpers.size()) + ".");
        auto separated = [](const Point2 &a, const Point2 &b) { return distance(a, b) > 0.0; };
        if (!separated(source, irs))
            throw std::invalid_argument("SystemConfig: source and IRS coincide.");
        for (const auto &h : helpers)
            if (!separated(h, irs) || !separated(h, source))
                throw std::invalid_argument("SystemConfig: helper coincides with the source or the IRS.");
    }
};

} // namespace irsd2d

#endif
