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

#ifndef IRSD2D_OPTIMIZER_HPP
#define IRSD2D_OPTIMIZER_HPP

#include "beamforming.hpp"
#include "channel.hpp"
#include "power_bandwidth.hpp"
#include "system_model.hpp"
#include "task_assignment.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace irsd2d
{

enum class InitialPhase
{
    zeros,
    random,
};

struct OptimizerOptions
{
    double epsilon = 1e-4; // relative improvement below which the loop stops
    int max_iter = 50;
    InitialPhase initial_phase = InitialPhase::zeros;
    bool optimize_phases = true; // false: the phase block is skipped
    bool allow_local = true;     // false: the source keeps no bits (D_0 = 0)
    std::uint64_t rng_seed = 0;   // with rng_stream, seeds the random initial phase and the randomization
    std::uint64_t rng_stream = 0; // e.g. the Monte-Carlo trial index
    PowerBandwidthOptions resources;
    BeamformingOptions beamforming;
};

struct RunResult
{
    bool feasible = true; // false only if no node is allowed to and able to compute
    Allocation alloc;
    PhaseProfile phase;
    DelayReport report;   // report.trace[i] = bottleneck after iteration i, trace[0] = initial point
    int iterations = 0;
    bool converged = false;
    bool fallback = false; // a block could not reproduce the previous iterate; loop stopped there
};

struct InitialPoint
{
    Allocation alloc;
    PhaseProfile phase;
};

// Equal bandwidth and power, phases from the chosen policy, and the optimal
// task split at the rates these induce.
inline InitialPoint initialize(const SystemConfig &config, const ChannelRealization &ch,
                               const OptimizerOptions &opts = {})
{
    const std::size_t K = config.num_helpers();
    const std::size_t N = ch.irs_elements();
    InitialPoint init;
    init.alloc.b.assign(K, 1.0 / static_cast<double>(K));
    init.alloc.p.assign(K, config.max_power / static_cast<double>(K));
    if (opts.initial_phase == InitialPhase::random)
    {
        auto rng = link_stream(opts.rng_seed, opts.rng_stream, LinkKind::initial_phase, 0);
        std::uniform_real_distribution<double> U(0.0, 2.0 * std::numbers::pi);
        std::vector<double> theta(N);
        for (double &v : theta)
            v = U(rng);
        init.phase = PhaseProfile(std::move(theta));
    }
    else
    {
        init.phase = PhaseProfile::zeros(N);
    }

    const std::vector<double> gains = effective_gains(ch, init.phase);
    std::vector<double> rates(K);
    for (std::size_t k = 0; k < K; ++k)
        rates[k] = rate(init.alloc.b[k], init.alloc.p[k], gains[k], config);
    init.alloc.d = optimal_assignment(rates, config, opts.allow_local);
    return init;
}

// Alternates the three blocks (task split, bandwidth and power, phases) until
// the bottleneck improves by less than epsilon relative. The initial point
// already carries an optimal split, so each iteration runs bandwidth and
// power, then phases, then a fresh split, which makes the improvement of the
// iteration visible in its own objective value. Each block keeps its input
// whenever it cannot improve it, so the trace never increases.
inline RunResult run(const SystemConfig &config, const ChannelRealization &ch, const OptimizerOptions &opts = {})
{
    config.validate();
    const std::size_t K = config.num_helpers();
    if (ch.num_helpers() != K || ch.irs_elements() != config.irs_elements)
        throw std::invalid_argument("run: channel dimensions do not match the configuration.");
    if (!(opts.epsilon >= 0.0) || opts.max_iter < 0)
        throw std::invalid_argument("run: epsilon must be non-negative and max_iter non-negative.");

    RunResult res;
    InitialPoint init;
    try
    {
        init = initialize(config, ch, opts);
    }
    catch (const std::domain_error &)
    {
        // only possible without local computing: nothing can be offloaded
        res.feasible = false;
        res.phase = PhaseProfile::zeros(ch.irs_elements());
        res.report.bottleneck = infinite_delay;
        res.report.per_node_delay.assign(K + 1, infinite_delay);
        res.report.trace.push_back(infinite_delay);
        return res;
    }
    res.alloc = std::move(init.alloc);
    res.phase = std::move(init.phase);

    std::vector<double> gains = effective_gains(ch, res.phase);
    double t = delays_from_gains(res.alloc, gains, config).bottleneck;
    std::vector<double> trace{t};
    auto rng = link_stream(opts.rng_seed, opts.rng_stream, LinkKind::randomization, 0);

    for (int i = 1; i <= opts.max_iter; ++i)
    {
        const double t_prev = t;
        res.iterations = i;

        // The local delay is fixed once the split is, so the two remaining
        // blocks minimize the bottleneck over the helpers alone; the next
        // split then converts the faster links into a lower overall delay.
        Allocation offload = res.alloc;
        offload.d[0] = 0.0;
        const double t_local = local_delay(res.alloc.d[0], config);
        const double t_help = delays_from_gains(offload, gains, config).bottleneck;
        if (t_help > 0.0)
        {
            try
            {
                const ResourceSolution rs = solve_power_bandwidth(offload.d, gains, config, t_help, opts.resources);
                if (rs.status == ResourceStatus::solved)
                {
                    Allocation cand = offload;
                    cand.b = rs.b;
                    cand.p = rs.p;
                    if (delays_from_gains(cand, gains, config).bottleneck <= t_help)
                    {
                        offload.b = rs.b;
                        offload.p = rs.p;
                    }
                }

                if (opts.optimize_phases)
                {
                    const double t_cur = delays_from_gains(offload, gains, config).bottleneck;
                    const PhaseResult pr = optimize_phase(offload, ch, config, res.phase, t_cur, rng, opts.beamforming);
                    if (pr.accepted)
                    {
                        const std::vector<double> g2 = effective_gains(ch, pr.phase);
                        if (delays_from_gains(offload, g2, config).bottleneck <= t_cur)
                        {
                            res.phase = pr.phase;
                            gains = g2;
                        }
                    }
                }
            }
            catch (const std::runtime_error &)
            {
                res.fallback = true;
            }
            res.alloc.b = offload.b;
            res.alloc.p = offload.p;
            t = std::max(t_local, delays_from_gains(offload, gains, config).bottleneck);
        }

        // task split at the current rates
        {
            std::vector<double> rates(K);
            for (std::size_t k = 0; k < K; ++k)
                rates[k] = rate(res.alloc.b[k], res.alloc.p[k], gains[k], config);
            Allocation cand = res.alloc;
            cand.d = optimal_assignment(rates, config, opts.allow_local);
            const double tc = delays_from_gains(cand, gains, config).bottleneck;
            if (tc <= t)
            {
                res.alloc = std::move(cand);
                t = tc;
            }
        }

        trace.push_back(t);
        if (res.fallback)
            break;
        if (t_prev - t < opts.epsilon * t)
        {
            res.converged = true;
            break;
        }
    }

    res.report = delays_from_gains(res.alloc, gains, config);
    res.report.trace = std::move(trace);
    check_allocation(res.alloc, config);
    return res;
}

} // namespace irsd2d

#endif
