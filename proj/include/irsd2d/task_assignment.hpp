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

#ifndef IRSD2D_TASK_ASSIGNMENT_HPP
#define IRSD2D_TASK_ASSIGNMENT_HPP

#include "system_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace irsd2d
{

// Bits per second node k can finish end-to-end: x_0 = f_0/C locally and
// x_k = 1/(1/R_k + C/f_k) for a helper. A helper with R_k = 0 gets x_k = 0.
inline std::vector<double> processing_rates(const std::vector<double> &rates, const SystemConfig &config,
                                            bool include_local = true)
{
    const std::size_t K = config.num_helpers();
    if (rates.size() != K)
        throw std::invalid_argument("processing_rates: expected one rate per helper.");
    std::vector<double> x(K + 1, 0.0);
    x[0] = include_local ? config.cpu_freq[0] / config.cycles_per_bit : 0.0;
    for (std::size_t k = 1; k <= K; ++k)
    {
        const double r = rates[k - 1];
        if (!(r >= 0.0))
            throw std::invalid_argument("processing_rates: rates must be non-negative.");
        if (r == 0.0)
            continue;
        x[k] = 1.0 / (1.0 / r + config.cycles_per_bit / config.cpu_freq[k]);
    }
    return x;
}

// Closed-form min-max task split at fixed rates: every node that receives
// bits finishes at the same time t = D / sum(x). With include_local = false
// the source keeps nothing (D_0 = 0).
inline std::vector<double> optimal_assignment(const std::vector<double> &rates, const SystemConfig &config,
                                              bool include_local = true)
{
    const std::vector<double> x = processing_rates(rates, config, include_local);
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    if (!(total > 0.0))
        throw std::domain_error("optimal_assignment: no node can process any bits.");

    std::vector<double> d(x.size(), 0.0);
    std::size_t last = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        d[k] = x[k] * config.task_bits / total;
        if (x[k] > 0.0)
            last = k;
    }
    // last active node absorbs the rounding residue so that sum(d) == D
    double others = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k)
        if (k != last)
            others += d[k];
    d[last] = config.task_bits - others;
    return d;
}

// Bottleneck delay reached by optimal_assignment.
inline double equalized_delay(const std::vector<double> &rates, const SystemConfig &config, bool include_local = true)
{
    const std::vector<double> x = processing_rates(rates, config, include_local);
    return config.task_bits / std::accumulate(x.begin(), x.end(), 0.0);
}

// Verification route for the task split that never touches x_k: solves the
// LP by bisection on t, where the bits node k can absorb by time t are found
// by a second bisection on its delay function.
inline std::vector<double> lp_oracle(const std::vector<double> &rates, const SystemConfig &config,
                                     double tolerance = 1e-12, bool include_local = true)
{
    const std::size_t K = config.num_helpers();
    if (rates.size() != K)
        throw std::invalid_argument("lp_oracle: expected one rate per helper.");
    constexpr int max_iter = 400;

    auto node_delay = [&](std::size_t k, double bits) {
        return k == 0 ? local_delay(bits, config) : offload_delay(bits, rates[k - 1], k, config);
    };
    auto capacity = [&](std::size_t k, double t) {
        if (k == 0 && !include_local)
            return 0.0;
        double lo = 0.0;
        double hi = t * config.cpu_freq[k] / config.cycles_per_bit; // computation alone takes t
        if (node_delay(k, hi) <= t)
            return hi;
        // bracket width relative to its start, so a node that absorbs nothing
        // (lo stuck at 0) still terminates
        const double width = tolerance * hi;
        for (int it = 0; hi - lo > width; ++it)
        {
            if (it == max_iter)
                throw std::runtime_error("lp_oracle: capacity bisection did not converge.");
            const double mid = 0.5 * (lo + hi);
            (node_delay(k, mid) <= t ? lo : hi) = mid;
        }
        return lo;
    };
    auto total_capacity = [&](double t) {
        double s = 0.0;
        for (std::size_t k = 0; k <= K; ++k)
            s += capacity(k, t);
        return s;
    };

    double t_hi = config.cycles_per_bit * config.task_bits / config.cpu_freq[0];
    for (int it = 0; total_capacity(t_hi) < config.task_bits; ++it)
    {
        if (it == max_iter)
            throw std::domain_error("lp_oracle: no node can process any bits.");
        t_hi *= 2.0;
    }
    double t_lo = 0.0;
    for (int it = 0; t_hi - t_lo > tolerance * t_hi; ++it)
    {
        if (it == max_iter)
            throw std::runtime_error("lp_oracle: bisection on t did not converge.");
        const double mid = 0.5 * (t_lo + t_hi);
        (total_capacity(mid) >= config.task_bits ? t_hi : t_lo) = mid;
    }

    std::vector<double> d(K + 1);
    double s = 0.0;
    for (std::size_t k = 0; k <= K; ++k)
        s += d[k] = capacity(k, t_hi);
    for (double &v : d)
        v *= config.task_bits / s;
    return d;
}

} // namespace irsd2d

#endif
