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

#ifndef IRSD2D_BEAMFORMING_HPP
#define IRSD2D_BEAMFORMING_HPP

#include "power_bandwidth.hpp"
#include "sdp.hpp"
#include "system_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace irsd2d
{

// h_k^H = [g_k^H diag(h_r), h_{d,k}], so that |h_k^H v| with
// v = (e^{j theta_1}, ..., e^{j theta_N}, 1) is the composite amplitude.
struct LiftedChannel
{
    Eigen::VectorXcd h;
    Eigen::MatrixXcd H; // h h^H
};

inline std::vector<LiftedChannel> lift(const ChannelRealization &ch)
{
    const auto N = static_cast<Eigen::Index>(ch.irs_elements());
    std::vector<LiftedChannel> out;
    out.reserve(ch.num_helpers());
    for (std::size_t k = 0; k < ch.num_helpers(); ++k)
    {
        LiftedChannel lc;
        lc.h.resize(N + 1);
        lc.h.head(N) = (ch.h_r.conjugate().array() * ch.g[k].array()).matrix();
        lc.h(N) = std::conj(ch.h_d(static_cast<Eigen::Index>(k)));
        lc.H = lc.h * lc.h.adjoint();
        lc.H = (0.5 * (lc.H + lc.H.adjoint())).eval(); // exactly Hermitian regardless of FMA contraction
        out.push_back(std::move(lc));
    }
    return out;
}

inline Eigen::VectorXcd lifted_vector(const PhaseProfile &phase)
{
    const auto N = static_cast<Eigen::Index>(phase.size());
    Eigen::VectorXcd v(N + 1);
    v.head(N) = phase.reflection();
    v(N) = 1.0;
    return v;
}

inline double lifted_gain(const LiftedChannel &lc, const Eigen::VectorXcd &v) { return std::norm(lc.h.dot(v)); }

// Phases relative to the appended element, so that it becomes exactly 1.
inline PhaseProfile extract_phase(const Eigen::VectorXcd &v)
{
    const Eigen::Index N = v.size() - 1;
    const double ref = std::arg(v(N));
    std::vector<double> theta(static_cast<std::size_t>(N));
    for (Eigen::Index n = 0; n < N; ++n)
        theta[static_cast<std::size_t>(n)] = std::arg(v(n)) - ref;
    return PhaseProfile(std::move(theta));
}

struct BeamformingOptions
{
    int randomization_samples = 1000;
    double rel_tol = 1e-6;  // on the relaxed bottleneck
    int max_sdp_solves = 60;
    double rank_one_ratio = 1e-9; // lambda_2 / lambda_1 below which V is treated as rank one
    SdpOptions sdp;
};

struct PhaseResult
{
    PhaseProfile phase;
    double t = 0.0;         // bottleneck of the returned profile
    double t_relaxed = 0.0; // relaxed optimum (upper end of the final bracket)
    bool accepted = false;  // false: the incoming profile was kept
    int sdp_solves = 0;
};

// Phase block: minimizes the bottleneck over the IRS phases for a fixed task
// split, bandwidth and power. The relaxed problem is solved as a sequence of
// SDP feasibility checks on the deadline t; each feasible relaxed beam also
// yields the deadline it actually meets, which tightens the bracket from
// above. A rank-one profile is then recovered by Gaussian randomization and
// only accepted if it does not increase the bottleneck.
inline PhaseResult optimize_phase(const Allocation &alloc, const ChannelRealization &ch, const SystemConfig &config,
                                  const PhaseProfile &current, double t_cur, std::mt19937_64 &rng,
                                  const BeamformingOptions &opts = {})
{
    const std::size_t K = config.num_helpers();
    const auto lifted = lift(ch);
    const auto dim = static_cast<Eigen::Index>(ch.irs_elements()) + 1;

    PhaseResult keep;
    keep.phase = current;
    keep.t = t_cur;
    keep.t_relaxed = t_cur;

    const double t_local = local_delay(alloc.d[0], config);
    double lo = t_local;
    std::vector<std::size_t> active;
    for (std::size_t k = 1; k <= K; ++k)
    {
        if (alloc.d[k] <= 0.0)
            continue;
        if (!(alloc.b[k - 1] > 0.0) || !(alloc.p[k - 1] > 0.0))
            throw std::invalid_argument("optimize_phase: helper with bits has no bandwidth or power.");
        active.push_back(k);
        lo = std::max(lo, alloc.d[k] * config.cycles_per_bit / config.cpu_freq[k]);
    }
    if (active.empty())
        return keep;

    auto bottleneck_for = [&](const std::vector<double> &gains) {
        double t = t_local;
        for (std::size_t k : active)
            t = std::max(t, offload_delay(alloc.d[k], rate(alloc.b[k - 1], alloc.p[k - 1], gains[k - 1], config), k,
                                          config));
        return t;
    };
    auto relaxed_bottleneck = [&](const Eigen::MatrixXcd &V) {
        std::vector<double> gains(K, 0.0);
        for (std::size_t k : active)
            gains[k - 1] = std::max(0.0, real_trace_product(lifted[k - 1].H, V));
        return bottleneck_for(gains);
    };
    // channel gain helper k needs to finish by t
    auto thresholds_at = [&](double t) {
        std::vector<double> tau(K, 0.0);
        for (std::size_t k : active)
            tau[k - 1] = min_power(alloc.b[k - 1], required_rate(alloc.d[k], t, k, config), 1.0, config) /
                         alloc.p[k - 1];
        return tau;
    };

    std::vector<Eigen::MatrixXcd> Hs;
    for (const auto &lc : lifted)
        Hs.push_back(lc.H);

    const Eigen::VectorXcd v_cur = lifted_vector(current);
    LiftedBeam best{v_cur * v_cur.adjoint()};
    double hi = t_cur;
    double probe = hi;
    int solves = 0;
    while (solves < opts.max_sdp_solves && hi - lo > opts.rel_tol * hi)
    {
        ++solves;
        const SdpResult r = solve_feasibility(Hs, thresholds_at(probe), dim, opts.sdp);
        if (r.feasible)
        {
            best = r.beam;
            const double met = relaxed_bottleneck(r.beam.V);
            const double new_hi = std::min(probe, met);
            hi = std::min(hi, new_hi);
            if (met >= probe * (1.0 - opts.rel_tol))
                break; // relaxed optimum sits at the probe
            probe = hi;
        }
        else
        {
            lo = std::max(lo, probe);
            probe = 0.5 * (lo + hi);
        }
    }

    auto score = [&](const Eigen::VectorXcd &u) {
        std::vector<double> gains(K, 0.0);
        for (std::size_t k : active)
            gains[k - 1] = lifted_gain(lifted[k - 1], u);
        return -bottleneck_for(gains);
    };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(best.V, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = es.eigenvalues();
    const bool rank_one = dim == 1 || lam(dim - 2) <= opts.rank_one_ratio * lam(dim - 1);
    // a rank-one beam yields the same phases for every draw
    const Eigen::VectorXcd u = gaussian_randomize(best, rank_one ? 1 : opts.randomization_samples, score, rng);

    PhaseResult out;
    out.phase = extract_phase(u);
    out.t = bottleneck_for(effective_gains(ch, out.phase));
    out.t_relaxed = hi;
    out.sdp_solves = solves;
    out.accepted = out.t <= t_cur;
    if (!out.accepted)
    {
        out.phase = current;
        out.t = t_cur;
    }
    return out;
}

} // namespace irsd2d

#endif
