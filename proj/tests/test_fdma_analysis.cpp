// SPDX-License-Identifier: Apache-2.0
//
// spectra: optimal spectrum management for Gaussian interference channels
// Copyright (C) 2026 The spectra authors
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

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "spectra/fdma_analysis.hpp"
#include "support.hpp"

using namespace spectra;
using doctest::Approx;

TEST_CASE("flat FDMA reallocation widths and power")
{
    const std::vector<double> even{1.0, 1.0};
    auto s = flat_fdma_reallocate(even);
    CHECK(s.widths[0] == 0.5);
    CHECK(s.widths[1] == 0.5);
    CHECK(s.psd == 2.0);

    const std::vector<double> three{1.0, 2.0, 3.0};
    s = flat_fdma_reallocate(three);
    CHECK(s.psd == 6.0);
    CHECK(s.widths[0] == Approx(1.0 / 6.0));
    CHECK(s.widths[1] == Approx(1.0 / 3.0));
    CHECK(s.widths[2] == Approx(0.5));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(s.widths[i] * s.psd == Approx(three[i]).epsilon(1e-15));

    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(flat_fdma_reallocate(zero), std::invalid_argument);
}

TEST_CASE("reallocation preserves every user's power")
{
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t k = 2 + trial % 3;
        const auto link = test::random_link(gen, k);
        std::vector<double> psd(k);
        for (auto &p : psd)
            p = test::log_uniform(gen, 1e-2, 1e3);
        std::vector<std::size_t> group;
        for (std::size_t i = 0; i < k; ++i)
            if (i == 0 || gen() % 2)
                group.push_back(i);
        const auto r = reallocation_gain(link, psd, group);
        const auto power = r.allocation.powers();
        for (std::size_t i = 0; i < k; ++i)
            CHECK(power[i] == Approx(psd[i]).epsilon(1e-12));
    }
}

TEST_CASE("strongly coupled pair gains on both rates")
{
    const FlatChannel link{2, {0.0, 0.6, 0.6, 0.0}, {1.0, 1.0}};
    const std::vector<double> psd{3.0, 5.0};
    const std::array<std::size_t, 2> group{0, 1};
    const auto r = reallocation_gain(link, psd, group);
    // Independent evaluation: sharing SINRs, then width-weighted single-user rates at PSD 8.
    const double before0 = std::log(1.0 + 3.0 / (1.0 + 0.6 * 5.0));
    const double before1 = std::log(1.0 + 5.0 / (1.0 + 0.6 * 3.0));
    const double after0 = 3.0 / 8.0 * std::log(9.0), after1 = 5.0 / 8.0 * std::log(9.0);
    CHECK(r.rates_before[0] == Approx(before0).epsilon(1e-14));
    CHECK(r.rates_before[1] == Approx(before1).epsilon(1e-14));
    CHECK(r.rates_after[0] == Approx(after0).epsilon(1e-14));
    CHECK(r.rates_after[1] == Approx(after1).epsilon(1e-14));
    CHECK(after0 >= before0);
    CHECK(after1 >= before1);
}

TEST_CASE("outsider benefits when two interferers orthogonalize")
{
    std::mt19937_64 gen(17);
    const std::array<std::size_t, 2> group{1, 2};
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto link = test::random_link(gen, 3, 5.0);
        std::vector<double> psd{test::log_uniform(gen, 1e-2, 1e2), test::log_uniform(gen, 1e-2, 1e2),
                                test::log_uniform(gen, 1e-2, 1e2)};
        const auto r = reallocation_gain(link, psd, group);
        // Outsider rate recomputed from the pieces.
        double outsider = 0.0;
        for (const auto &p : r.allocation.pieces())
            outsider += p.width() * test::shannon(link.alpha, link.noise, 3, 0, p.psd);
        CHECK(r.rates_after[0] == Approx(outsider).epsilon(1e-12));
        CHECK(r.rates_after[0] >= r.rates_before[0] - 1e-12 * std::max(1.0, r.rates_before[0]));
    }
}

TEST_CASE("single-user group leaves rates unchanged")
{
    std::mt19937_64 gen(23);
    const auto link = test::random_link(gen, 3);
    const std::vector<double> psd{1.0, 2.0, 3.0};
    const std::array<std::size_t, 1> group{1};
    const auto r = reallocation_gain(link, psd, group);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(r.rates_after[i] == Approx(r.rates_before[i]).epsilon(1e-14));
    const std::vector<double> silent{1.0, 0.0, 3.0};
    CHECK_THROWS_AS(reallocation_gain(link, silent, group), std::invalid_argument);
}

TEST_CASE("pairwise condition per sub-channel")
{
    const FlatChannel half{2, {0.0, 0.5, 0.5, 0.0}, {1.0, 1.0}};
    const FlatChannel lopsided{2, {0.0, 0.6, 0.49, 0.0}, {1.0, 1.0}};
    const ChannelSpec all_half(2, {SubChannel{0.5, half}, SubChannel{0.5, half}}, {1, 1}, {1, 1});
    CHECK(pairwise_fdma_condition(all_half, 0, 1).certified);

    const ChannelSpec mixed(2, {SubChannel{0.3, lopsided}, SubChannel{0.3, half}, SubChannel{0.4, half}}, {1, 1},
                            {1, 1});
    const auto v = pairwise_fdma_condition(mixed, 0, 1);
    CHECK_FALSE(v.certified);
    CHECK(v.per_subchannel == std::vector<bool>{false, true, true});
    const std::vector<std::size_t> rest{1, 2};
    CHECK(pairwise_fdma_condition(mixed, 0, 1, rest).certified);
    CHECK_THROWS_AS(pairwise_fdma_condition(mixed, 1, 1), std::invalid_argument);

    std::mt19937_64 gen(2);
    FlatChannel strong = test::random_link(gen, 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            if (i != j)
                strong.alpha[j * 4 + i] = 0.5 + test::uniform(gen, 0.0, 2.0);
    const ChannelSpec four(4, {SubChannel{1.0, strong}}, {1, 1, 1, 1}, {1, 1, 1, 1});
    CHECK(fdma_decision(four).pairs.size() == 6);
}

TEST_CASE("power region threshold")
{
    CHECK(fdma_power_region_threshold(0.1) == Approx(80.0).epsilon(1e-14));
    CHECK(fdma_power_region_threshold(0.5) == Approx(0.0));
    CHECK(fdma_power_region_threshold(0.25) == Approx(8.0).epsilon(1e-14));
    CHECK_THROWS_AS(fdma_power_region_threshold(0.0), std::invalid_argument);

    // At p1 = p2 = 4 and alpha = 1/4 sharing and FDMA tie: both give ln 9.
    const auto link = test::symmetric_link(0.25);
    const std::vector<double> psd{4.0, 4.0};
    const auto r = rate_density(link, psd);
    CHECK(r[0] + r[1] == Approx(std::log(9.0)).epsilon(1e-14));
    CHECK(reallocated_sum_rate(4.0, 4.0) == Approx(std::log(9.0)).epsilon(1e-14));
}

TEST_CASE("gain indicator matches the sign of the sum-rate change")
{
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const double alpha = test::uniform(gen, 0.01, 0.49);
        const double p1 = test::log_uniform(gen, 1e-2, 1e3), p2 = test::log_uniform(gen, 1e-2, 1e3);
        // Direct products of the two sum-rate arguments, without logs.
        const double fdma = 1.0 + p1 + p2;
        const double share = (1.0 + p1 / (1.0 + alpha * p2)) * (1.0 + p2 / (1.0 + alpha * p1));
        const double ind = fdma_gain_indicator(alpha, p1, p2);
        if (std::abs(fdma - share) > 1e-9 * fdma)
            CHECK((fdma > share) == (ind > 0.0));
    }
}
