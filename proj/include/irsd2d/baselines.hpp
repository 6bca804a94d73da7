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

#ifndef IRSD2D_BASELINES_HPP
#define IRSD2D_BASELINES_HPP

#include "optimizer.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace irsd2d
{

// Partial offloading over the direct links only: the reflected path is
// removed from the channel and the phase block is skipped.
inline RunResult partial_no_irs(const SystemConfig &config, const ChannelRealization &ch, OptimizerOptions opts = {})
{
    opts.optimize_phases = false;
    return run(config, without_reflection(ch), opts);
}

// Everything is offloaded (D_0 = 0). With use_irs = false the reflected path
// is removed as in partial_no_irs. result.feasible is false if no helper has
// a usable channel.
inline RunResult full_offload(const SystemConfig &config, const ChannelRealization &ch, OptimizerOptions opts = {},
                              bool use_irs = true)
{
    opts.allow_local = false;
    if (!use_irs)
    {
        opts.optimize_phases = false;
        return run(config, without_reflection(ch), opts);
    }
    return run(config, ch, opts);
}

// The source computes the whole task itself.
inline DelayReport local_only(const SystemConfig &config)
{
    config.validate();
    std::vector<double> t(config.num_helpers() + 1, 0.0);
    t[0] = local_delay(config.task_bits, config);
    DelayReport r = make_report(std::move(t));
    r.trace.push_back(r.bottleneck);
    return r;
}

enum class Scheme
{
    proposed,
    partial_no_irs,
    full_offload,
    full_offload_no_irs,
    local_only,
};

inline std::string_view scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::proposed:
        return "proposed";
    case Scheme::partial_no_irs:
        return "partial_no_irs";
    case Scheme::full_offload:
        return "full_offload";
    case Scheme::full_offload_no_irs:
        return "full_offload_no_irs";
    case Scheme::local_only:
        return "local_only";
    }
    return "unknown";
}

inline Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : {Scheme::proposed, Scheme::partial_no_irs, Scheme::full_offload, Scheme::full_offload_no_irs,
                     Scheme::local_only})
        if (scheme_name(s) == name)
            return s;
    throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                "' (expected proposed, partial_no_irs, full_offload, full_offload_no_irs or local_only)");
}

// Uniform entry point used by the harness. local_only reports zero iterations.
inline RunResult run_scheme(Scheme s, const SystemConfig &config, const ChannelRealization &ch,
                            const OptimizerOptions &opts = {})
{
    switch (s)
    {
    case Scheme::proposed:
        return run(config, ch, opts);
    case Scheme::partial_no_irs:
        return partial_no_irs(config, ch, opts);
    case Scheme::full_offload:
        return full_offload(config, ch, opts, true);
    case Scheme::full_offload_no_irs:
        return full_offload(config, ch, opts, false);
    case Scheme::local_only:
        break;
    }
    RunResult r;
    const std::size_t K = config.num_helpers();
    r.alloc.d.assign(K + 1, 0.0);
    r.alloc.d[0] = config.task_bits;
    r.alloc.b.assign(K, 0.0);
    r.alloc.p.assign(K, 0.0);
    r.phase = PhaseProfile::zeros(ch.irs_elements());
    r.report = local_only(config);
    r.converged = true;
    return r;
}

} // namespace irsd2d

#endif
