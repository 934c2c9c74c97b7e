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

#include <cmath>
#include <random>

#include "spectra/channel_model.hpp"
#include "support.hpp"

using namespace spectra;
using doctest::Approx;

TEST_CASE("normalize divides by the direct gain")
{
    RawChannelSpec raw;
    raw.users = 2;
    raw.subchannels = {RawSubChannel{1.0, {2.0, 0.7, 0.5, 1.0}, {0.02, 0.3}}};
    raw.weights = {1.0, 1.0};
    raw.budgets = {1.0, 1.0};
    const auto spec = normalize(raw);
    CHECK(spec.alpha(0, 1, 0) == Approx(0.25));
    CHECK(spec.noise(0, 0) == Approx(0.01));
    CHECK(spec.alpha(0, 0, 1) == Approx(0.7));
    CHECK(spec.noise(0, 1) == Approx(0.3));
}

TEST_CASE("normalize of equal gains and noise is the unit channel")
{
    RawChannelSpec raw{2, {RawSubChannel{1.0, {3.0, 5.0, 3.0, 5.0}, {3.0, 5.0}}}, {1.0, 1.0}, {1.0, 1.0}};
    const auto spec = normalize(raw);
    CHECK(spec.alpha(0, 0, 1) == Approx(1.0));
    CHECK(spec.alpha(0, 1, 0) == Approx(1.0));
    CHECK(spec.noise(0, 0) == Approx(1.0));
    CHECK(spec.noise(0, 1) == Approx(1.0));
}

TEST_CASE("normalize reports the sub-channel and user of a zero direct gain")
{
    RawChannelSpec raw{2,
                       {RawSubChannel{0.5, {1.0, 0.1, 0.1, 1.0}, {1.0, 1.0}},
                        RawSubChannel{0.5, {1.0, 0.1, 0.1, 0.0}, {1.0, 1.0}}},
                       {1.0, 1.0},
                       {1.0, 1.0}};
    try
    {
        normalize(raw);
        FAIL("expected DirectGainError");
    }
    catch (const DirectGainError &e)
    {
        CHECK(e.user == 1);
        CHECK(e.subchannel == 1);
    }
}

TEST_CASE("normalized rate density equals the raw Shannon rate")
{
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t k = 1 + trial % 4;
        RawSubChannel sc{1.0, std::vector<double>(k * k), std::vector<double>(k)};
        for (auto &g : sc.gain)
            g = test::log_uniform(gen, 0.01, 10.0);
        for (auto &s : sc.sigma)
            s = test::log_uniform(gen, 0.01, 10.0);
        RawChannelSpec raw{k, {sc}, std::vector<double>(k, 1.0), std::vector<double>(k, 1.0)};
        const auto spec = normalize(raw);
        std::vector<double> psd(k);
        for (auto &p : psd)
            p = test::log_uniform(gen, 1e-3, 100.0);
        const auto r = rate_density(spec, 0, psd);
        for (std::size_t i = 0; i < k; ++i)
        {
            double interference = sc.sigma[i];
            for (std::size_t j = 0; j < k; ++j)
                if (j != i)
                    interference += sc.gain[j * k + i] * psd[j];
            const double direct = std::log(1.0 + sc.gain[i * k + i] * psd[i] / interference);
            CHECK(r[i] == Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("rate density basics")
{
    const auto link = test::symmetric_link(0.1);
    const std::vector<double> zero{0.0, 0.0};
    for (double r : rate_density(link, zero))
        CHECK(r == 0.0);

    FlatChannel single{1, {0.0}, {1.0}};
    const std::vector<double> one{1.0};
    CHECK(rate_density(single, one)[0] == Approx(std::log(2.0)).epsilon(1e-15));

    // At the crossover power both users see SINR 8.
    const std::vector<double> p{40.0, 40.0};
    const auto r = rate_density(link, p);
    CHECK(r[0] + r[1] == Approx(std::log(81.0)).epsilon(1e-14));

    const std::vector<double> negative{-1.0, 1.0};
    CHECK_THROWS_AS(rate_density(link, negative), std::invalid_argument);
}

TEST_CASE("channel spec validation")
{
    const auto link = test::symmetric_link(0.1);
    CHECK_THROWS_AS(ChannelSpec(2, {SubChannel{0.5, link}}, {1, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(2, {SubChannel{1.0, link}}, {0, 0}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(2, {SubChannel{1.0, link}}, {1, 1}, {-1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(2, {SubChannel{1.0, FlatChannel{2, {0, -0.1, 0.1, 0}, {1, 1}}}}, {1, 1}, {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(2, {SubChannel{1.0, FlatChannel{2, {0, 0.1, 0.1, 0}, {1, 1e-13}}}}, {1, 1}, {1, 1}),
                    std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec(2, {SubChannel{0.25, link}, SubChannel{0.75, link}}, {1, 0}, {0, 1}));
}

TEST_CASE("total rates")
{
    FlatChannel single{1, {0.0}, {1.0}};
    const ChannelSpec spec(1, {SubChannel{1.0, single}}, {1.0}, {1.0});
    CHECK(total_rates(spec, SpectrumAllocation::flat({1.0})).rates[0] == Approx(std::log(2.0)));

    const auto link = test::symmetric_link(0.3);
    const ChannelSpec two(2, {SubChannel{1.0, link}}, {1, 1}, {3, 3});
    const SpectrumAllocation whole = SpectrumAllocation::flat({2.0, 3.0});
    const SpectrumAllocation halves({BandPiece{0.0, 0.5, {2.0, 3.0}}, BandPiece{0.5, 1.0, {2.0, 3.0}}});
    const auto a = total_rates(two, whole), b = total_rates(two, halves);
    CHECK(a.rates[0] == Approx(b.rates[0]).epsilon(1e-15));
    CHECK(a.rates[1] == Approx(b.rates[1]).epsilon(1e-15));

    const ChannelSpec split(2, {SubChannel{0.4, link}, SubChannel{0.6, link}}, {1, 1}, {3, 3});
    CHECK_THROWS_AS(total_rates(split, whole), std::invalid_argument);
    const auto aligned = total_rates(split, align_to(split, whole));
    CHECK(aligned.rates[0] == Approx(a.rates[0]).epsilon(1e-14));
}

TEST_CASE("mixture allocation of sharing and FDMA pieces gives the envelope value")
{
    // Tangency powers at alpha = 0.1, from a 50-digit solve of the common-tangent equations.
    const double p_f = 54.930986174458908, p_h = 115.93745586238673, p = 100.0;
    const double lambda = (p - p_f) / (p_h - p_f);
    const auto link = test::symmetric_link(0.1);
    const ChannelSpec spec(2, {SubChannel{1.0, link}}, {1, 1}, {50, 50});
    const SpectrumAllocation alloc({BandPiece{0.0, 1.0 - lambda, {p_f / 2, p_f / 2}},
                                    BandPiece{1.0 - lambda, 1.0 - lambda / 2, {p_h, 0.0}},
                                    BandPiece{1.0 - lambda / 2, 1.0, {0.0, p_h}}});
    const double f = 2.0 * std::log(1.0 + (p_f / 2) / (1.0 + 0.1 * p_f / 2));
    const double expected = f + lambda * (std::log(1.0 + p_h) - f);
    CHECK(total_rates(spec, alloc).sum() == Approx(expected).epsilon(1e-12));
    const auto power = alloc.powers();
    CHECK(power[0] == Approx(50.0).epsilon(1e-12));
    CHECK(power[1] == Approx(50.0).epsilon(1e-12));
}

TEST_CASE("refine keeps rates of aligned allocations")
{
    std::mt19937_64 gen(3);
    const auto spec = test::random_spec(gen, 2, 1);
    CHECK(refine(spec, std::vector<double>{}).subchannels() == 1);
    CHECK_THROWS_AS(refine(spec, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(refine(spec, std::vector<double>{-0.1}), std::invalid_argument);

    std::vector<double> cuts;
    for (int k = 1; k < 64; ++k)
        cuts.push_back(k / 64.0);
    const auto fine = refine(spec, cuts);
    CHECK(fine.subchannels() == 64);

    std::vector<BandPiece> pieces;
    double start = 0.0;
    for (int k = 0; k < 5; ++k)
    {
        const double end = k == 4 ? 1.0 : start + test::uniform(gen, 0.05, 0.2);
        pieces.push_back(BandPiece{start, end, {test::uniform(gen, 0, 5), test::uniform(gen, 0, 5)}});
        start = end;
    }
    const SpectrumAllocation alloc(pieces);
    const auto coarse = total_rates(spec, alloc);
    const auto refined = total_rates(fine, align_to(fine, alloc));
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(refined.rates[i] == Approx(coarse.rates[i]).epsilon(1e-12));
}

TEST_CASE("allocation validation")
{
    CHECK_THROWS_AS(SpectrumAllocation({BandPiece{0.0, 0.5, {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumAllocation({BandPiece{0.1, 1.0, {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumAllocation({BandPiece{0.0, 0.5, {1.0}}, BandPiece{0.5, 1.0, {1.0, 2.0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpectrumAllocation({BandPiece{0.0, 1.0, {-1.0}}}), std::invalid_argument);
}
