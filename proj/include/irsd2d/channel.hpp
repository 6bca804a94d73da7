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

#ifndef IRSD2D_CHANNEL_HPP
#define IRSD2D_CHANNEL_HPP

#include "config.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace irsd2d
{

using cplx = std::complex<double>;

// One fading draw. g[k-1] holds g_k, so the row vector used in the
// composite link is g_k^H.
struct ChannelRealization
{
    Eigen::VectorXcd h_r;             // source -> IRS, length N
    std::vector<Eigen::VectorXcd> g;  // IRS -> helper k, K vectors of length N
    Eigen::VectorXcd h_d;             // source -> helper k (direct), length K

    std::size_t irs_elements() const { return static_cast<std::size_t>(h_r.size()); }
    std::size_t num_helpers() const { return g.size(); }
};

enum class LinkKind : std::uint32_t
{
    source_irs = 0,
    irs_helper = 1,
    direct = 2,
    // solver-side streams, kept apart from the channel draws
    initial_phase = 3,
    randomization = 4,
};

// Independent generator per (seed, trial, link) so that draws do not depend
// on the order in which links are sampled, and a larger N extends the
// element sequence of a smaller one.
inline std::mt19937_64 link_stream(std::uint64_t seed, std::uint64_t trial, LinkKind kind, std::uint32_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(kind), index};
    return std::mt19937_64(seq);
}

// Zero-mean circularly-symmetric complex Gaussian with E|z|^2 = 1.
inline cplx complex_gaussian(std::mt19937_64 &rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

inline Eigen::VectorXcd rayleigh_vector(std::mt19937_64 rng, std::size_t n, double amplitude)
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = amplitude * complex_gaussian(rng);
    return v;
}

inline ChannelRealization generate_channel(const SystemConfig &config, std::uint64_t trial)
{
    const std::size_t K = config.num_helpers();
    const std::size_t N = config.irs_elements;

    ChannelRealization ch;
    const double a_r = std::sqrt(config.path_gain(distance(config.source, config.irs)));
    ch.h_r = rayleigh_vector(link_stream(config.seed, trial, LinkKind::source_irs, 0), N, a_r);

    ch.g.reserve(K);
    ch.h_d.resize(static_cast<Eigen::Index>(K));
    for (std::size_t k = 1; k <= K; ++k)
    {
        const auto idx = static_cast<std::uint32_t>(k);
        const double a_g = std::sqrt(config.path_gain(distance(config.irs, config.helpers[k - 1])));
        ch.g.push_back(rayleigh_vector(link_stream(config.seed, trial, LinkKind::irs_helper, idx), N, a_g));

        auto rng = link_stream(config.seed, trial, LinkKind::direct, idx);
        const double a_d = std::sqrt(config.path_gain(distance(config.source, config.helpers[k - 1])));
        const cplx z = a_d * complex_gaussian(rng);
        ch.h_d(static_cast<Eigen::Index>(k - 1)) = config.blocked.count(k) ? cplx(0.0, 0.0) : z;
    }
    return ch;
}

// Same draw with the reflected path removed (no IRS deployed).
inline ChannelRealization without_reflection(ChannelRealization ch)
{
    ch.h_r.setZero();
    return ch;
}

} // namespace irsd2d

#endif
