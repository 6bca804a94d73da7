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

#include <numbers>
#include <numeric>
#include <random>

using namespace irsd2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
struct Instance
{
    SystemConfig config;
    std::vector<double> d;
    std::vector<double> gains;
};

// K = 2 with a random split (a small local share, so the links matter) and
// gains in a range where the links are neither idle nor saturated.
Instance random_instance(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Instance inst{oracle::random_config(2, rng), {}, {}};
    const double D = inst.config.task_bits;
    const double local = 0.3 * U(rng) * D;
    const double share = 0.1 + 0.8 * U(rng);
    inst.d = {local, share * (D - local), 0.0};
    inst.d[2] = D - inst.d[0] - inst.d[1];
    for (int k = 0; k < 2; ++k)
        inst.gains.push_back(std::pow(10.0, -10.0 + 4.0 * U(rng)));
    return inst;
}

double bottleneck_of(const Instance &inst, const ResourceSolution &rs)
{
    return oracle::bottleneck(inst.d, rs.b, rs.p, inst.gains, inst.config);
}

// a deadline that is comfortably feasible: slightly above what equal shares
// at full power achieve
double generous_hint(const Instance &inst)
{
    return 1.01 * oracle::bottleneck(inst.d, {0.5, 0.5}, {0.5 * inst.config.max_power, 0.5 * inst.config.max_power},
                              inst.gains, inst.config);
}
} // namespace

TEST_CASE("required_rate", "[power_bandwidth]")
{
    SystemConfig c;
    c.cpu_freq = {1e9, 1.2e9, 1.5e9};
    CHECK(required_rate(0.0, 0.1, 1, c) == 0.0);
    // inverting the helper delay formula
    const double dk = 4.2857e5, t = 0.5714;
    const double rho = required_rate(dk, t, 1, c);
    CHECK_THAT(offload_delay(dk, rho, 1, c), WithinRel(t, 1e-12));
    CHECK_THAT(rho, WithinRel(dk / (t - dk * 1000.0 / 1.2e9), 1e-15));
    // t -> infinity
    double prev = rho;
    for (double tt : {1.0, 10.0, 1e3, 1e6})
    {
        const double r = required_rate(dk, tt, 1, c);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1.0);
    CHECK_THROWS_AS(required_rate(dk, dk * 1000.0 / 1.2e9, 1, c), std::domain_error);
    CHECK_THROWS_AS(required_rate(dk, 1e-6, 1, c), std::domain_error);
    CHECK_THROWS_AS(required_rate(-1.0, 1.0, 1, c), std::invalid_argument);
}

TEST_CASE("min_power inverts the rate", "[power_bandwidth]")
{
    SystemConfig c;
    CHECK(min_power(0.5, 0.0, 1e-6, c) == 0.0);
    CHECK_THAT(min_power(1.0, c.bandwidth, 1e-6, c), WithinRel(c.bandwidth * c.noise_psd / 1e-6, 1e-12));
    CHECK(std::isinf(min_power(0.5, 1.0, 0.0, c)));
    CHECK_THROWS_AS(min_power(0.0, 1.0, 1.0, c), std::invalid_argument);
    CHECK_THROWS_AS(min_power(0.5, -1.0, 1.0, c), std::invalid_argument);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double b = 0.01 + 0.99 * U(rng);
        const double rho = std::pow(10.0, 3.0 + 4.0 * U(rng));
        const double gain = std::pow(10.0, -10.0 + 5.0 * U(rng));
        const double p = min_power(b, rho, gain, c);
        CHECK_THAT(rate(b, p, gain, c), WithinRel(rho, 1e-9));
    }
}

TEST_CASE("marginal-power helpers", "[power_bandwidth][numerics]")
{
    // psi(s) = s - 1 + e^-s against a long-double evaluation away from 0,
    // and against its series near 0
    for (double s : {1e-8, 1e-5, 1e-3, 0.1, 0.49, 0.5, 0.51, 1.0, 5.0, 40.0, 700.0})
    {
        const long double ls = s;
        const long double exact =
            s < 1e-3 ? ls * ls / 2 - ls * ls * ls / 6 + ls * ls * ls * ls / 24 : ls - 1.0L + std::exp(-ls);
        CHECK_THAT(detail::psi(s), WithinRel(static_cast<double>(exact), 1e-12));
    }
    for (double L : {-30.0, -5.0, -1.0, 0.0, 1.0, 3.0, 10.0, 100.0, 600.0})
    {
        const double s = detail::inverse_log_phi(L);
        CHECK_THAT(detail::log_phi(s), WithinAbs(L, 1e-10 * std::max(1.0, std::abs(L))));
    }
}

TEST_CASE("feasible_at: degenerate and symmetric cases", "[power_bandwidth]")
{
    SECTION("single helper takes the whole band")
    {
        SystemConfig c;
        c.helpers = {{1.0, 5.0}};
        c.cpu_freq = {1e9, 1.2e9};
        c.blocked.clear();
        const std::vector<double> d{4e5, 6e5};
        const double t = 0.8; // remote computing alone takes 0.5 s
        const auto s = feasible_at(t, d, {1e-7}, c);
        REQUIRE(s.b.size() == 1);
        CHECK(s.b[0] == 1.0);
        CHECK_THAT(s.p[0], WithinRel(min_power(1.0, required_rate(6e5, t, 1, c), 1e-7, c), 1e-14));
        CHECK(s.feasible == (s.p[0] <= c.max_power));
        const auto tight = feasible_at(t, d, {1e-12}, c);
        CHECK_FALSE(tight.feasible);
    }
    SECTION("symmetric helpers share equally")
    {
        SystemConfig c;
        c.cpu_freq = {1e9, 1.2e9, 1.2e9};
        const auto s = feasible_at(0.6, {2e5, 4e5, 4e5}, {1e-7, 1e-7}, c);
        CHECK_THAT(s.b[0], WithinAbs(0.5, 1e-9));
        CHECK_THAT(s.b[1], WithinAbs(0.5, 1e-9));
        CHECK_THAT(s.p[0], WithinRel(s.p[1], 1e-8));
    }
    SECTION("idle helpers get nothing")
    {
        SystemConfig c;
        const auto s = feasible_at(0.6, {6e5, 4e5, 0.0}, {1e-7, 0.0}, c);
        CHECK(s.feasible);
        CHECK(s.b[0] == 1.0);
        CHECK(s.b[1] == 0.0);
        CHECK(s.p[1] == 0.0);
    }
    SECTION("pre-conditions")
    {
        SystemConfig c;
        CHECK_THROWS_AS(feasible_at(0.1, {6e5, 4e5, 0.0}, {1e-7, 1e-7}, c), std::domain_error);
        CHECK_THROWS_AS(feasible_at(0.7, {6e5, 4e5}, {1e-7, 1e-7}, c), std::invalid_argument);
        const auto s = feasible_at(0.7, {6e5, 2e5, 2e5}, {1e-7, 0.0}, c);
        CHECK_FALSE(s.feasible);
    }
}

TEST_CASE("feasible_at matches a bandwidth grid search", "[power_bandwidth][oracle]")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const auto inst = random_instance(rng);
        const SystemConfig &c = inst.config;
        double t_min = local_delay(inst.d[0], c);
        for (std::size_t k = 1; k <= 2; ++k)
            t_min = std::max(t_min, inst.d[k] * c.cycles_per_bit / c.cpu_freq[k]);
        const double t = t_min * (1.05 + 2.0 * U(rng));
        const auto s = feasible_at(t, inst.d, inst.gains, c);
        const double grid = oracle::grid_min_power(t, inst.d, inst.gains, c);
        CHECK_THAT(s.total_power, WithinRel(grid, 1e-2));
        // the grid can only be worse than the exact optimum
        CHECK(s.total_power <= grid * (1.0 + 1e-9));
        CHECK_THAT(s.b[0] + s.b[1], WithinAbs(1.0, 1e-9));
        CHECK(s.feasible == (s.total_power <= c.max_power));
    }
}

TEST_CASE("total power is convex over the bandwidth simplex", "[power_bandwidth][property]")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const auto inst = random_instance(rng);
        const SystemConfig &c = inst.config;
        double t = local_delay(inst.d[0], c);
        for (std::size_t k = 1; k <= 2; ++k)
            t = std::max(t, inst.d[k] * c.cycles_per_bit / c.cpu_freq[k]);
        t *= 1.5;
        auto P = [&](double b1) {
            return min_power(b1, required_rate(inst.d[1], t, 1, c), inst.gains[0], c) +
                   min_power(1.0 - b1, required_rate(inst.d[2], t, 2, c), inst.gains[1], c);
        };
        const double x = 0.05 + 0.9 * U(rng), y = 0.05 + 0.9 * U(rng), lam = U(rng);
        const double lhs = P(lam * x + (1.0 - lam) * y);
        const double rhs = lam * P(x) + (1.0 - lam) * P(y);
        if (std::isfinite(rhs))
            CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
    }
}

TEST_CASE("solve_power_bandwidth: local-only split", "[power_bandwidth]")
{
    SystemConfig c;
    const auto rs = solve_power_bandwidth({c.task_bits, 0.0, 0.0}, {1e-7, 1e-7}, c, 10.0);
    CHECK(rs.status == ResourceStatus::solved);
    CHECK_THAT(rs.t, WithinRel(c.cycles_per_bit * c.task_bits / c.cpu_freq[0], 1e-15));
    CHECK(rs.b == std::vector<double>{0.0, 0.0});
    CHECK(rs.p == std::vector<double>{0.0, 0.0});
}

TEST_CASE("solve_power_bandwidth: constraints, monotonicity and hint handling", "[power_bandwidth][property]")
{
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i)
    {
        const auto inst = random_instance(rng);
        const SystemConfig &c = inst.config;
        const double hint = generous_hint(inst);
        const auto rs = solve_power_bandwidth(inst.d, inst.gains, c, hint);
        REQUIRE(rs.status == ResourceStatus::solved);
        CHECK(rs.t <= hint);
        CHECK(rs.b[0] >= 0.0);
        CHECK(rs.b[1] >= 0.0);
        CHECK(rs.p[0] >= 0.0);
        CHECK(rs.p[1] >= 0.0);
        CHECK(rs.b[0] + rs.b[1] <= 1.0 + 1e-9);
        CHECK(rs.p[0] + rs.p[1] <= c.max_power * (1.0 + 1e-9));
        for (std::size_t k = 1; k <= 2; ++k)
        {
            CHECK(rs.t > inst.d[k] * c.cycles_per_bit / c.cpu_freq[k]);
            const double r = rate(rs.b[k - 1], rs.p[k - 1], inst.gains[k - 1], c);
            CHECK(r >= required_rate(inst.d[k], rs.t, k, c) * (1.0 - 1e-9));
        }
        // the reported t is met by the returned allocation
        CHECK(bottleneck_of(inst, rs) <= rs.t * (1.0 + 1e-9));

        // more power never hurts
        SystemConfig more = c;
        more.max_power *= 2.0;
        CHECK(solve_power_bandwidth(inst.d, inst.gains, more, hint).t <= rs.t + 1e-9);

        // an unreachable hint is reported, not silently replaced
        const auto bad = solve_power_bandwidth(inst.d, inst.gains, c, rs.t * 0.5);
        if (bad.status == ResourceStatus::hint_infeasible)
            CHECK(bad.t == rs.t * 0.5);
    }
}

TEST_CASE("solve_power_bandwidth matches a brute-force (b1, p1) grid", "[power_bandwidth][oracle]")
{
    std::mt19937_64 rng(61);
    for (int i = 0; i < 10; ++i)
    {
        const auto inst = random_instance(rng);
        const auto rs = solve_power_bandwidth(inst.d, inst.gains, inst.config, generous_hint(inst));
        const double grid = oracle::grid_min_bottleneck(inst.d, inst.gains, inst.config, 400);
        CHECK_THAT(rs.t, WithinRel(grid, 1e-2));
        CHECK(rs.t <= grid + 2e-6);
    }
}

TEST_CASE("solve_power_bandwidth on the reference scenario", "[power_bandwidth][oracle]")
{
    SystemConfig c;
    const auto ch = generate_channel(c, 0);
    const auto gains = effective_gains(ch, PhaseProfile::zeros(c.irs_elements));
    const std::vector<double> d{2e5, 4e5, 4e5};
    Instance inst{c, d, gains};
    const auto rs = solve_power_bandwidth(d, gains, c, generous_hint(inst));
    const double grid = oracle::grid_min_bottleneck(d, gains, c, 1000);
    CHECK_THAT(rs.t, WithinRel(grid, 1e-2));
}
