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

#ifndef IRSD2D_SYSTEM_MODEL_HPP
#define IRSD2D_SYSTEM_MODEL_HPP

#include "channel.hpp"
#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsd2d
{

// Returned for a node that holds bits but has no usable link.
inline constexpr double infinite_delay = std::numeric_limits<double>::infinity();

inline double wrap_phase(double theta)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(theta, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi) // fmod of a tiny negative value
        w = 0.0;
    return w;
}

// IRS phase shifts with unit reflection amplitude, normalized to [0, 2pi).
class PhaseProfile
{
  public:
    PhaseProfile() = default;
    explicit PhaseProfile(std::vector<double> theta) : theta_(std::move(theta))
    {
        for (double &t : theta_)
        {
            if (!std::isfinite(t))
                throw std::invalid_argument("PhaseProfile: non-finite phase.");
            t = wrap_phase(t);
        }
    }
    static PhaseProfile zeros(std::size_t n) { return PhaseProfile(std::vector<double>(n, 0.0)); }

    std::size_t size() const { return theta_.size(); }
    const std::vector<double> &theta() const { return theta_; }
    double operator[](std::size_t n) const { return theta_[n]; }

    // Diagonal of the reflection matrix, e^{j theta_n}.
    Eigen::VectorXcd reflection() const
    {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(theta_.size()));
        for (std::size_t n = 0; n < theta_.size(); ++n)
            v(static_cast<Eigen::Index>(n)) = std::polar(1.0, theta_[n]);
        return v;
    }

  private:
    std::vector<double> theta_;
};

// |g_k^H diag(e^{j theta}) h_r + h_{d,k}|^2 for 1-based helper index k.
inline double effective_gain(const ChannelRealization &ch, const PhaseProfile &phase, std::size_t k)
{
    if (k < 1 || k > ch.num_helpers())
        throw std::out_of_range("effective_gain: helper index " + std::to_string(k) + " out of range.");
    if (phase.size() != ch.irs_elements())
        throw std::invalid_argument("effective_gain: phase profile length does not match the IRS size.");
    const auto &gk = ch.g[k - 1];
    const Eigen::VectorXcd refl = phase.reflection();
    const cplx reflected = (gk.conjugate().array() * refl.array() * ch.h_r.array()).sum();
    return std::norm(reflected + ch.h_d(static_cast<Eigen::Index>(k - 1)));
}

inline std::vector<double> effective_gains(const ChannelRealization &ch, const PhaseProfile &phase)
{
    std::vector<double> out(ch.num_helpers());
    for (std::size_t k = 1; k <= out.size(); ++k)
        out[k - 1] = effective_gain(ch, phase, k);
    return out;
}

// FDMA rate b*B*log2(1 + p*gain / (b*B*N0)); zero when b, p or gain vanish.
inline double rate(double b, double p, double gain, const SystemConfig &config)
{
    if (!(b >= 0.0) || b > 1.0 + 1e-9)
        throw std::invalid_argument("rate: bandwidth fraction must lie in [0, 1].");
    if (!(p >= 0.0))
        throw std::invalid_argument("rate: power must be non-negative.");
    if (!(gain >= 0.0))
        throw std::invalid_argument("rate: gain must be non-negative.");
    if (b == 0.0 || p == 0.0 || gain == 0.0)
        return 0.0;
    const double bw = b * config.bandwidth;
    return bw * std::log1p(p * gain / (bw * config.noise_psd)) / std::numbers::ln2;
}

inline double local_delay(double d0, const SystemConfig &config)
{
    if (!(d0 >= 0.0))
        throw std::invalid_argument("local_delay: task bits must be non-negative.");
    return config.cycles_per_bit * d0 / config.cpu_freq[0];
}

// Transmission plus remote computation time for helper k (1-based).
inline double offload_delay(double dk, double rk, std::size_t k, const SystemConfig &config)
{
    if (!(dk >= 0.0) || !(rk >= 0.0))
        throw std::invalid_argument("offload_delay: bits and rate must be non-negative.");
    if (k < 1 || k >= config.cpu_freq.size())
        throw std::out_of_range("offload_delay: helper index out of range.");
    if (dk == 0.0)
        return 0.0;
    if (rk == 0.0)
        return infinite_delay;
    return dk / rk + dk * config.cycles_per_bit / config.cpu_freq[k];
}

// Task split d (K+1 entries, index 0 local), bandwidth fractions b and
// transmit powers p (K entries each).
struct Allocation
{
    std::vector<double> d;
    std::vector<double> b;
    std::vector<double> p;
};

struct DelayReport
{
    std::vector<double> per_node_delay; // index 0 = local
    double bottleneck = 0.0;
    std::vector<double> trace;          // bottleneck after each outer iteration, trace[0] = initial point
};

class ConstraintViolation : public std::runtime_error
{
  public:
    ConstraintViolation(std::string id, const std::string &what)
        : std::runtime_error("constraint '" + id + "' violated: " + what), id_(std::move(id))
    {
    }
    const std::string &id() const { return id_; }

  private:
    std::string id_;
};

// Throws ConstraintViolation naming the first violated constraint.
inline void check_allocation(const Allocation &a, const SystemConfig &config, double tol = 1e-9)
{
    const std::size_t K = config.num_helpers();
    if (a.d.size() != K + 1 || a.b.size() != K || a.p.size() != K)
        throw ConstraintViolation("dimension", "allocation vectors do not match K=" + std::to_string(K));

    double sum_d = 0.0, sum_b = 0.0, sum_p = 0.0;
    for (double v : a.d)
    {
        if (!(v >= -tol * config.task_bits))
            throw ConstraintViolation("nonnegativity", "negative task bits");
        sum_d += v;
    }
    for (double v : a.b)
    {
        if (!(v >= -tol))
            throw ConstraintViolation("nonnegativity", "negative bandwidth fraction");
        sum_b += v;
    }
    for (double v : a.p)
    {
        if (!(v >= -tol * config.max_power))
            throw ConstraintViolation("nonnegativity", "negative power");
        sum_p += v;
    }
    if (std::abs(sum_d - config.task_bits) > tol * config.task_bits)
        throw ConstraintViolation("task_sum", "sum of task bits " + std::to_string(sum_d) + " != " +
                                                  std::to_string(config.task_bits));
    if (sum_b > 1.0 + tol)
        throw ConstraintViolation("bandwidth_budget", "sum of bandwidth fractions " + std::to_string(sum_b) + " > 1");
    if (sum_p > config.max_power * (1.0 + tol))
        throw ConstraintViolation("power_budget", "total power " + std::to_string(sum_p) + " W > " +
                                                      std::to_string(config.max_power) + " W");
}

inline DelayReport make_report(std::vector<double> per_node)
{
    DelayReport r;
    r.bottleneck = *std::max_element(per_node.begin(), per_node.end());
    r.per_node_delay = std::move(per_node);
    return r;
}

// Per-node delays for given effective gains; no constraint check.
inline DelayReport delays_from_gains(const Allocation &a, const std::vector<double> &gains, const SystemConfig &config)
{
    const std::size_t K = config.num_helpers();
    std::vector<double> t(K + 1);
    t[0] = local_delay(std::max(a.d[0], 0.0), config);
    for (std::size_t k = 1; k <= K; ++k)
    {
        const double dk = std::max(a.d[k], 0.0);
        const double rk = rate(std::max(a.b[k - 1], 0.0), std::max(a.p[k - 1], 0.0), gains[k - 1], config);
        t[k] = offload_delay(dk, rk, k, config);
    }
    return make_report(std::move(t));
}

// The single min-max objective evaluator shared by every block and baseline.
inline DelayReport total_delay(const Allocation &alloc, const PhaseProfile &phase, const ChannelRealization &ch,
                               const SystemConfig &config)
{
    check_allocation(alloc, config);
    return delays_from_gains(alloc, effective_gains(ch, phase), config);
}

} // namespace irsd2d

#endif
