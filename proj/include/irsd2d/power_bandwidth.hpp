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

#ifndef IRSD2D_POWER_BANDWIDTH_HPP
#define IRSD2D_POWER_BANDWIDTH_HPP

#include "system_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace irsd2d
{

// Minimum rate that lets helper k (1-based) finish D_k bits by time t.
inline double required_rate(double dk, double t, std::size_t k, const SystemConfig &config)
{
    if (!(dk >= 0.0))
        throw std::invalid_argument("required_rate: task bits must be non-negative.");
    if (dk == 0.0)
        return 0.0;
    const double slack = t - dk * config.cycles_per_bit / config.cpu_freq.at(k);
    if (!(slack > 0.0))
        throw std::domain_error("required_rate: t does not exceed the remote computing time.");
    return dk / slack;
}

// Power that achieves rate rho on bandwidth fraction b; +inf if gain is zero.
inline double min_power(double b, double rho, double gain, const SystemConfig &config)
{
    if (!(b > 0.0))
        throw std::invalid_argument("min_power: bandwidth fraction must be positive.");
    if (!(rho >= 0.0) || !(gain >= 0.0))
        throw std::invalid_argument("min_power: rate and gain must be non-negative.");
    if (rho == 0.0)
        return 0.0;
    if (gain == 0.0)
        return std::numeric_limits<double>::infinity();
    const double bw = b * config.bandwidth;
    return std::expm1(rho * std::numbers::ln2 / bw) * bw * config.noise_psd / gain;
}

namespace detail
{

// psi(s) = s - 1 + e^-s, so that the marginal power saving per unit of
// bandwidth phi(s) = s e^s - (e^s - 1) equals e^s psi(s).
inline double psi(double s)
{
    if (s >= 0.5)
        return s + std::expm1(-s);
    double term = 1.0, sum = 0.0;
    for (int n = 1; n <= 30; ++n)
    {
        term *= -s / n;
        if (n >= 2)
            sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

inline double log_phi(double s) { return s + std::log(psi(s)); }

// Inverse of log_phi on s > 0, Newton in log s safeguarded by a bracket.
inline double inverse_log_phi(double L)
{
    const double s_hi = std::min(std::exp(0.5 * (L + std::numbers::ln2)), std::max(2.0, L));
    const double s_lo = std::exp(0.5 * (L + std::numbers::ln2 - s_hi));
    double u_lo = std::log(s_lo), u_hi = std::log(s_hi);
    double u = 0.5 * (u_lo + u_hi);
    for (int it = 0; it < 200; ++it)
    {
        const double s = std::exp(u);
        const double ps = psi(s);
        const double f = s + std::log(ps) - L;
        if (f > 0.0)
            u_hi = u;
        else
            u_lo = u;
        const double df = s * s / ps;
        double next = u - f / df;
        if (!(next > u_lo && next < u_hi))
            next = 0.5 * (u_lo + u_hi);
        if (std::abs(next - u) < 1e-15 * std::max(1.0, std::abs(u)) || u_hi - u_lo < 1e-15)
            return std::exp(next);
        u = next;
    }
    return std::exp(u);
}

} // namespace detail

struct PowerBandwidthOptions
{
    double tol_t = 1e-6;          // outer bisection, seconds
    double inner_tol = 1e-10;     // multiplier bisection, log scale
    int max_outer = 200;
    int max_inner = 500;
};

struct InnerSolution
{
    bool feasible = false;
    std::vector<double> b;
    std::vector<double> p;
    double total_power = 0.0;
    int iterations = 0;
};

// Minimum total power meeting every rate requirement of deadline t, over the
// bandwidth simplex. Each helper's power is convex and decreasing in its
// bandwidth, so the optimum uses all bandwidth and equalizes the marginal
// power reductions; the common multiplier is found by bisection.
inline InnerSolution feasible_at(double t, const std::vector<double> &d, const std::vector<double> &gains,
                                 const SystemConfig &config, const PowerBandwidthOptions &opts = {})
{
    const std::size_t K = config.num_helpers();
    if (d.size() != K + 1 || gains.size() != K)
        throw std::invalid_argument("feasible_at: dimension mismatch.");
    if (t < local_delay(d[0], config))
        throw std::domain_error("feasible_at: t is below the local computing time.");

    InnerSolution out;
    out.b.assign(K, 0.0);
    out.p.assign(K, 0.0);

    std::vector<std::size_t> active;
    std::vector<double> rho(K, 0.0);
    for (std::size_t k = 1; k <= K; ++k)
    {
        if (d[k] <= 0.0)
            continue;
        rho[k - 1] = required_rate(d[k], t, k, config);
        if (!(gains[k - 1] > 0.0))
        {
            out.total_power = std::numeric_limits<double>::infinity();
            return out;
        }
        active.push_back(k - 1);
    }
    if (active.empty())
    {
        out.feasible = true;
        return out;
    }

    if (active.size() == 1)
    {
        out.b[active[0]] = 1.0;
    }
    else
    {
        const double n = static_cast<double>(active.size());
        std::vector<double> log_a, sc;
        for (std::size_t k : active)
        {
            log_a.push_back(std::log(config.bandwidth * config.noise_psd / gains[k]));
            sc.push_back(rho[k] / config.bandwidth * std::numbers::ln2);
        }
        auto fractions = [&](double log_mu, std::vector<double> &b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < active.size(); ++i)
                sum += b[i] = sc[i] / detail::inverse_log_phi(log_mu - log_a[i]);
            return sum;
        };
        // at lo some helper alone needs the full band, at hi all fit in 1/n
        double lo = -std::numeric_limits<double>::infinity(), hi = lo;
        for (std::size_t i = 0; i < active.size(); ++i)
        {
            lo = std::max(lo, log_a[i] + detail::log_phi(sc[i]));
            hi = std::max(hi, log_a[i] + detail::log_phi(n * sc[i]));
        }
        std::vector<double> b(active.size());
        while (hi - lo > opts.inner_tol * std::max(1.0, std::abs(hi)))
        {
            if (++out.iterations > opts.max_inner)
                throw std::runtime_error("feasible_at: multiplier bisection did not converge.");
            const double mid = 0.5 * (lo + hi);
            (fractions(mid, b) > 1.0 ? lo : hi) = mid;
        }
        const double sum = fractions(0.5 * (lo + hi), b);
        for (std::size_t i = 0; i < active.size(); ++i)
            out.b[active[i]] = b[i] / sum;
    }

    for (std::size_t k : active)
    {
        out.p[k] = min_power(out.b[k], rho[k], gains[k], config);
        out.total_power += out.p[k];
    }
    out.feasible = out.total_power <= config.max_power;
    return out;
}

enum class ResourceStatus
{
    solved,
    hint_infeasible, // t_hint could not be reproduced; caller keeps its allocation
};

struct ResourceSolution
{
    std::vector<double> b;
    std::vector<double> p;
    double t = 0.0;
    int inner_iterations = 0;
    ResourceStatus status = ResourceStatus::solved;
};

// Smallest bottleneck reachable by re-allocating bandwidth and power for a
// fixed task split, by bisection on t over feasible_at. Never exceeds t_hint.
inline ResourceSolution solve_power_bandwidth(const std::vector<double> &d, const std::vector<double> &gains,
                                              const SystemConfig &config, double t_hint,
                                              const PowerBandwidthOptions &opts = {})
{
    const std::size_t K = config.num_helpers();
    if (d.size() != K + 1 || gains.size() != K)
        throw std::invalid_argument("solve_power_bandwidth: dimension mismatch.");

    ResourceSolution out;
    out.b.assign(K, 0.0);
    out.p.assign(K, 0.0);

    const double t_local = local_delay(d[0], config);
    double t_compute = 0.0;
    bool any_active = false;
    for (std::size_t k = 1; k <= K; ++k)
    {
        if (d[k] <= 0.0)
            continue;
        if (!(gains[k - 1] > 0.0))
            throw std::invalid_argument("solve_power_bandwidth: helper with bits has zero gain.");
        any_active = true;
        t_compute = std::max(t_compute, d[k] * config.cycles_per_bit / config.cpu_freq[k]);
    }
    if (!any_active)
    {
        out.t = t_local;
        return out;
    }

    auto take = [&](const InnerSolution &s, double t) {
        out.b = s.b;
        out.p = s.p;
        out.t = t;
    };

    double lo = std::max(t_local, t_compute);
    if (t_local > t_compute)
    {
        const InnerSolution s = feasible_at(lo, d, gains, config, opts);
        out.inner_iterations += s.iterations;
        if (s.feasible)
        {
            take(s, lo);
            return out;
        }
    }
    if (!(t_hint > lo))
    {
        out.t = t_hint;
        out.status = ResourceStatus::hint_infeasible;
        return out;
    }
    {
        const InnerSolution s = feasible_at(t_hint, d, gains, config, opts);
        out.inner_iterations += s.iterations;
        if (!s.feasible)
        {
            out.t = t_hint;
            out.status = ResourceStatus::hint_infeasible;
            return out;
        }
        take(s, t_hint);
    }

    double hi = t_hint;
    for (int it = 0; hi - lo > opts.tol_t; ++it)
    {
        if (it == opts.max_outer)
            break;
        const double mid = 0.5 * (lo + hi);
        const InnerSolution s = feasible_at(mid, d, gains, config, opts);
        out.inner_iterations += s.iterations;
        if (s.feasible)
        {
            hi = mid;
            take(s, mid);
        }
        else
        {
            lo = mid;
        }
    }
    return out;
}

} // namespace irsd2d

#endif
