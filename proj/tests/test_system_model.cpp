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

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace irsd2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
ChannelRealization scalar_channel(cplx hr, cplx g, cplx hd)
{
    ChannelRealization ch;
    ch.h_r = Eigen::VectorXcd::Constant(1, hr);
    ch.g = {Eigen::VectorXcd::Constant(1, g)};
    ch.h_d = Eigen::VectorXcd::Constant(1, hd);
    return ch;
}
} // namespace

TEST_CASE("default scenario is valid and matches the reference geometry", "[system_model][config]")
{
    SystemConfig c;
    REQUIRE_NOTHROW(c.validate());
    CHECK(c.num_helpers() == 2);
    CHECK(c.irs_elements == 32);
    CHECK(c.blocked == std::set<std::size_t>{2});
    // source (0,0) to IRS (0,5): C0 d^-alpha = 1e-3 * 5^-3
    CHECK_THAT(c.path_gain(distance(c.source, c.irs)), WithinRel(8e-6, 1e-12));
    CHECK_THAT(db_to_linear(-30.0), WithinRel(1e-3, 1e-12));
}

TEST_CASE("invalid scenarios are rejected", "[system_model][config]")
{
    auto bad = [](auto mutate) {
        SystemConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.irs_elements = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.bandwidth = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.noise_psd = -1.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.max_power = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.task_bits = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.cycles_per_bit = std::nan(""); }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.cpu_freq = {1e9, 1e9}; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.cpu_freq[2] = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.blocked = {3}; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.blocked = {0}; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemConfig &c) { c.helpers.clear(); }).validate(), std::invalid_argument);
}

TEST_CASE("generate_channel: dimensions, blocking and determinism", "[system_model][channel]")
{
    SystemConfig c;
    const auto ch = generate_channel(c, 7);
    REQUIRE(ch.irs_elements() == c.irs_elements);
    REQUIRE(ch.num_helpers() == 2);
    CHECK(ch.h_d(1) == cplx(0.0, 0.0));
    CHECK(ch.h_d(0) != cplx(0.0, 0.0));

    const auto again = generate_channel(c, 7);
    CHECK(again.h_r == ch.h_r);
    CHECK(again.g[0] == ch.g[0]);
    CHECK(again.g[1] == ch.g[1]);
    CHECK(again.h_d == ch.h_d);

    const auto other = generate_channel(c, 8);
    CHECK(other.h_r != ch.h_r);

    SECTION("a larger surface extends the element sequence of a smaller one")
    {
        SystemConfig big = c;
        big.irs_elements = 64;
        const auto chb = generate_channel(big, 7);
        CHECK(chb.h_r.head(32) == ch.h_r);
        CHECK(chb.g[0].head(32) == ch.g[0]);
        CHECK(chb.h_d == ch.h_d);
    }
    SECTION("the seed changes every link")
    {
        SystemConfig s = c;
        s.seed = 2;
        const auto chs = generate_channel(s, 7);
        CHECK(chs.h_r != ch.h_r);
        CHECK(chs.h_d(0) != ch.h_d(0));
    }
}

TEST_CASE("generate_channel: small-scale fading has unit mean power", "[system_model][channel][property]")
{
    SystemConfig c;
    c.irs_elements = 1000;
    c.blocked.clear();
    const double scale = c.path_gain(distance(c.source, c.irs));
    double sum = 0.0, mean_re = 0.0;
    std::size_t count = 0;
    for (std::uint64_t trial = 0; trial < 120; ++trial)
    {
        const auto ch = generate_channel(c, trial);
        for (Eigen::Index n = 0; n < ch.h_r.size(); ++n)
        {
            sum += std::norm(ch.h_r(n)) / scale;
            mean_re += ch.h_r(n).real() / std::sqrt(scale);
            ++count;
        }
    }
    REQUIRE(count >= 100000);
    CHECK_THAT(sum / static_cast<double>(count), WithinAbs(1.0, 0.02));
    CHECK_THAT(mean_re / static_cast<double>(count), WithinAbs(0.0, 0.01));
}

TEST_CASE("without_reflection removes only the reflected path", "[system_model][channel]")
{
    SystemConfig c;
    const auto ch = generate_channel(c, 1);
    const auto nr = without_reflection(ch);
    CHECK(nr.h_r.isZero());
    CHECK(nr.h_d == ch.h_d);
    const auto theta = PhaseProfile::zeros(c.irs_elements);
    CHECK_THAT(effective_gain(nr, theta, 1), WithinRel(std::norm(ch.h_d(0)), 1e-15));
    CHECK(effective_gain(nr, theta, 2) == 0.0);
}

TEST_CASE("PhaseProfile wraps into [0, 2pi)", "[system_model][phase]")
{
    const double two_pi = 2.0 * std::numbers::pi;
    const PhaseProfile p({-0.5, two_pi, 7.0, -1e-18, 3.0 * two_pi + 0.25});
    for (double t : p.theta())
    {
        CHECK(t >= 0.0);
        CHECK(t < two_pi);
    }
    CHECK_THAT(p[0], WithinAbs(two_pi - 0.5, 1e-12));
    CHECK(p[1] == 0.0);
    CHECK_THAT(p[2], WithinAbs(7.0 - two_pi, 1e-12));
    CHECK_THAT(p[4], WithinAbs(0.25, 1e-12));
    CHECK_THROWS_AS(PhaseProfile({std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST_CASE("effective_gain examples", "[system_model][gain]")
{
    const auto zero = PhaseProfile::zeros(1);
    CHECK_THAT(effective_gain(scalar_channel(1.0, 1.0, 0.0), zero, 1), WithinAbs(1.0, 1e-15));
    CHECK_THAT(effective_gain(scalar_channel(1.0, 1.0, 1.0), zero, 1), WithinAbs(4.0, 1e-15));
    // a phase of pi cancels the two paths
    CHECK_THAT(effective_gain(scalar_channel(1.0, 1.0, 1.0), PhaseProfile({std::numbers::pi}), 1),
               WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(effective_gain(scalar_channel(1.0, 1.0, 1.0), zero, 0), std::out_of_range);
    CHECK_THROWS_AS(effective_gain(scalar_channel(1.0, 1.0, 1.0), zero, 2), std::out_of_range);
    CHECK_THROWS(effective_gain(scalar_channel(1.0, 1.0, 1.0), PhaseProfile::zeros(2), 1));
}

TEST_CASE("effective_gain agrees with a scalar-loop evaluation", "[system_model][gain][oracle]")
{
    SystemConfig c;
    c.irs_elements = 4;
    c.blocked.clear();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    for (std::uint64_t trial = 0; trial < 50; ++trial)
    {
        const auto ch = generate_channel(c, trial);
        std::vector<double> theta(4);
        for (double &t : theta)
            t = U(rng);
        const PhaseProfile p(theta);
        for (std::size_t k = 1; k <= 2; ++k)
            CHECK_THAT(effective_gain(ch, p, k), WithinRel(oracle::loop_gain(ch, theta, k), 1e-12));
    }
}

TEST_CASE("effective_gain: rotating h_r is compensated by the phases", "[system_model][gain][property]")
{
    SystemConfig c;
    c.irs_elements = 16;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 2.0 * std::numbers::pi);
    for (std::uint64_t trial = 0; trial < 20; ++trial)
    {
        const auto ch = generate_channel(c, trial);
        std::vector<double> theta(16), shifted(16);
        const double phi = U(rng);
        for (std::size_t n = 0; n < 16; ++n)
        {
            theta[n] = U(rng);
            shifted[n] = theta[n] - phi;
        }
        ChannelRealization rot = ch;
        rot.h_r *= std::polar(1.0, phi);
        for (std::size_t k = 1; k <= 2; ++k)
            CHECK_THAT(effective_gain(rot, PhaseProfile(shifted), k),
                       WithinRel(effective_gain(ch, PhaseProfile(theta), k), 1e-10));
    }
}

TEST_CASE("effective_gain never exceeds the coherent-sum cap", "[system_model][gain][property]")
{
    SystemConfig c;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 2.0 * std::numbers::pi);
    for (std::uint64_t trial = 0; trial < 30; ++trial)
    {
        const auto ch = generate_channel(c, trial);
        std::vector<double> theta(c.irs_elements);
        for (double &t : theta)
            t = U(rng);
        for (std::size_t k = 1; k <= 2; ++k)
        {
            CHECK(effective_gain(ch, PhaseProfile(theta), k) <= oracle::coherent_gain(ch, k) * (1.0 + 1e-12));
            // and the aligned phases attain it
            CHECK_THAT(effective_gain(ch, PhaseProfile(oracle::coherent_phases(ch, k)), k),
                       WithinRel(oracle::coherent_gain(ch, k), 1e-10));
        }
    }
}

TEST_CASE("rate examples and limits", "[system_model][rate]")
{
    SystemConfig c;
    c.bandwidth = 1e6;
    CHECK(rate(1.0, 0.0, 1.0, c) == 0.0);
    CHECK(rate(0.0, 1.0, 1.0, c) == 0.0);
    CHECK(rate(0.5, 1.0, 0.0, c) == 0.0);
    // p * gain = 1e-10 equals B N0: unit SNR, log2(2) = 1
    CHECK_THAT(rate(1.0, 1.0, 1e-10, c), WithinRel(1e6, 1e-12));
    CHECK_THROWS_AS(rate(-0.1, 1.0, 1.0, c), std::invalid_argument);
    CHECK_THROWS_AS(rate(0.5, -1.0, 1.0, c), std::invalid_argument);
    CHECK_THROWS_AS(rate(0.5, 1.0, -1.0, c), std::invalid_argument);
    CHECK_THROWS_AS(rate(1.5, 1.0, 1.0, c), std::invalid_argument);

    // b -> 0 along 10^-m: monotonically decreasing towards 0
    double prev = rate(1.0, 1.0, 1e-8, c);
    for (int m = 1; m <= 12; ++m)
    {
        const double r = rate(std::pow(10.0, -m), 1.0, 1e-8, c);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-2 * rate(1.0, 1.0, 1e-8, c));
}

TEST_CASE("rate is non-decreasing in bandwidth and in power", "[system_model][rate][property]")
{
    SystemConfig c;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const double gain = std::pow(10.0, -9.0 + 4.0 * U(rng));
        const auto [b_lo, b_hi] = std::minmax({U(rng), U(rng)});
        const auto [p_lo, p_hi] = std::minmax({U(rng), U(rng)});
        const double p = U(rng), b = U(rng);
        CHECK(rate(b_lo, p, gain, c) <= rate(b_hi, p, gain, c));
        CHECK(rate(b, p_lo, gain, c) <= rate(b, p_hi, gain, c));
    }
}

TEST_CASE("delay formulas", "[system_model][delay]")
{
    SystemConfig c;
    c.cycles_per_bit = 1000.0;
    c.cpu_freq = {1e9, 1.2e9, 1.5e9};
    CHECK(local_delay(0.0, c) == 0.0);
    CHECK_THAT(local_delay(1e6, c), WithinRel(1.0, 1e-15));
    // independent evaluation: 1e6/2e6 + 1e6*1000/1.2e9 = 0.5 + 5/6
    CHECK_THAT(offload_delay(1e6, 2e6, 1, c), WithinRel(0.5 + 5.0 / 6.0, 1e-14));
    CHECK_THAT(offload_delay(1e6, 2e6, 1, c), WithinRel(1.333333, 1e-6));
    CHECK(offload_delay(0.0, 0.0, 1, c) == 0.0);
    CHECK(offload_delay(1.0, 0.0, 1, c) == infinite_delay);
    CHECK(std::isinf(offload_delay(1.0, 0.0, 2, c)));
    CHECK_THROWS_AS(local_delay(-1.0, c), std::invalid_argument);
    CHECK_THROWS_AS(offload_delay(-1.0, 1.0, 1, c), std::invalid_argument);
    CHECK_THROWS(offload_delay(1.0, 1.0, 3, c));
}

TEST_CASE("total_delay evaluates the min-max objective", "[system_model][delay]")
{
    SystemConfig c;
    const auto ch = generate_channel(c, 3);
    const auto theta = PhaseProfile::zeros(c.irs_elements);

    SECTION("everything local")
    {
        Allocation a{{c.task_bits, 0.0, 0.0}, {0.5, 0.5}, {0.5, 0.5}};
        const auto r = total_delay(a, theta, ch, c);
        CHECK_THAT(r.bottleneck, WithinRel(c.cycles_per_bit * c.task_bits / c.cpu_freq[0], 1e-15));
        CHECK(r.per_node_delay[1] == 0.0);
        CHECK(r.per_node_delay[2] == 0.0);
    }
    SECTION("closed-form split equalizes every delay")
    {
        Allocation a;
        a.b = {0.5, 0.5};
        a.p = {0.5, 0.5};
        const auto g = effective_gains(ch, theta);
        a.d = optimal_assignment({rate(0.5, 0.5, g[0], c), rate(0.5, 0.5, g[1], c)}, c);
        const auto r = total_delay(a, theta, ch, c);
        for (double t : r.per_node_delay)
            CHECK_THAT(t, WithinRel(r.bottleneck, 1e-9));
    }
    SECTION("bottleneck is the maximum per-node delay")
    {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int i = 0; i < 50; ++i)
        {
            const double u = U(rng), v = U(rng) * (1.0 - u);
            Allocation a{{u * c.task_bits, v * c.task_bits, (1.0 - u - v) * c.task_bits}, {0.3, 0.7}, {0.6, 0.4}};
            a.d[2] = c.task_bits - a.d[0] - a.d[1];
            const auto r = total_delay(a, theta, ch, c);
            CHECK(r.bottleneck == *std::max_element(r.per_node_delay.begin(), r.per_node_delay.end()));
        }
    }
}

TEST_CASE("constraint violations name the violated constraint", "[system_model][constraints]")
{
    SystemConfig c;
    const auto ch = generate_channel(c, 0);
    const auto theta = PhaseProfile::zeros(c.irs_elements);
    auto id_of = [&](Allocation a) -> std::string {
        try
        {
            total_delay(a, theta, ch, c);
        }
        catch (const ConstraintViolation &e)
        {
            return e.id();
        }
        return "none";
    };
    const double D = c.task_bits;
    CHECK(id_of({{D, 0.0, 0.0}, {0.5, 0.5}, {0.5, 0.5}}) == "none");
    CHECK(id_of({{D, 0.0}, {0.5, 0.5}, {0.5, 0.5}}) == "dimension");
    CHECK(id_of({{D + 1.0, -1.0, 0.0}, {0.5, 0.5}, {0.5, 0.5}}) == "nonnegativity");
    CHECK(id_of({{D, 0.0, 0.0}, {-0.1, 0.5}, {0.5, 0.5}}) == "nonnegativity");
    CHECK(id_of({{0.5 * D, 0.0, 0.0}, {0.5, 0.5}, {0.5, 0.5}}) == "task_sum");
    CHECK(id_of({{D, 0.0, 0.0}, {0.6, 0.5}, {0.5, 0.5}}) == "bandwidth_budget");
    CHECK(id_of({{D, 0.0, 0.0}, {0.5, 0.5}, {0.6, 0.5}}) == "power_budget");
    // within the 1e-9 tolerance
    CHECK(id_of({{D, 0.0, 0.0}, {0.5, 0.5 + 1e-10}, {0.5, 0.5}}) == "none");
}
