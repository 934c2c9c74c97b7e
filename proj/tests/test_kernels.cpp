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

#include "spectra/kernels.hpp"
#include "support.hpp"

using namespace spectra;
using namespace spectra::kernels;
using doctest::Approx;

namespace
{

PowerGrid grid_for(std::size_t users, std::size_t points, double upper)
{
    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < users; ++i)
        axes.push_back(axis_breakpoints(upper * static_cast<double>(i + 1), points, 1.0, 0.5));
    return PowerGrid(std::move(axes));
}

} // namespace

TEST_CASE("evaluate_grid matches the weighted rate and is thread-independent")
{
    std::mt19937_64 gen(1);
    for (std::size_t users : {1u, 2u, 3u})
    {
        const auto link = test::random_link(gen, users);
        const auto grid = grid_for(users, 11, 5.0);
        std::vector<double> w(users);
        for (auto &x : w)
            x = test::uniform(gen, 0.0, 2.0);
        std::vector<double> serial(grid.size()), parallel(grid.size());
        evaluate_grid(link, w, grid, serial, Execution::serial);
        evaluate_grid(link, w, grid, parallel, Execution::parallel);
        CHECK(serial == parallel);
        for (std::size_t k = 0; k < grid.size(); k += 7)
        {
            const auto p = grid.point(k);
            double expected = 0.0;
            for (std::size_t i = 0; i < users; ++i)
                expected += w[i] * test::shannon(link.alpha, link.noise, users, i, p);
            CHECK(serial[k] == Approx(expected).epsilon(1e-13));
        }
    }
}

TEST_CASE("price_max prefers the lowest index on ties")
{
    const PowerGrid grid({{0.0, 1.0, 2.0, 3.0}});
    const std::vector<double> values{0.0, 2.0, 3.0, 4.0};
    const std::vector<double> lambda{1.0};
    // Net values 0, 1, 1, 1.
    for (auto exec : {Execution::serial, Execution::parallel})
    {
        const auto a = price_max(values, grid, lambda, exec);
        CHECK(a.index == 1);
        CHECK(a.value == 1.0);
    }
}

TEST_CASE("price_max serial and parallel agree on random grids")
{
    std::mt19937_64 gen(9);
    const auto grid = grid_for(2, 65, 10.0);
    std::vector<double> values(grid.size());
    for (auto &v : values)
        v = std::floor(test::uniform(gen, 0.0, 20.0));
    for (int trial = 0; trial < 20; ++trial)
    {
        const std::vector<double> lambda{test::uniform(gen, 0.0, 0.1), test::uniform(gen, 0.0, 0.1)};
        const auto s = price_max(values, grid, lambda, Execution::serial);
        const auto p = price_max(values, grid, lambda, Execution::parallel);
        CHECK(s.index == p.index);
        CHECK(s.value == p.value);
        double best = -INFINITY;
        std::size_t at = 0;
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const auto pt = grid.point(k);
            const double v = values[k] - lambda[0] * pt[0] - lambda[1] * pt[1];
            if (v > best)
            {
                best = v;
                at = k;
            }
        }
        CHECK(s.index == at);
    }
}

TEST_CASE("wrap_scan finds the steepest far-side point")
{
    std::mt19937_64 gen(12);
    const std::size_t n = 5000, d = 2;
    std::vector<long double> coords(n * d), heights(n);
    for (auto &c : coords)
        c = test::uniform(gen, 0.0, 1.0);
    for (auto &h : heights)
        h = test::uniform(gen, 0.0, 1.0);
    const std::vector<long double> plane{0.1L, 0.2L, -0.3L};
    const std::vector<long double> ridge{-0.5L, 1.0L, 0.25L};
    const auto s = wrap_scan(coords, heights, plane, ridge, 1e-12L, Execution::serial);
    const auto p = wrap_scan(coords, heights, plane, ridge, 1e-12L, Execution::parallel);
    CHECK(s.index == p.index);
    CHECK(s.t == p.t);

    long double best = -INFINITY;
    std::size_t at = n;
    for (std::size_t k = 0; k < n; ++k)
    {
        const long double l = ridge[0] + ridge[1] * coords[2 * k] + ridge[2] * coords[2 * k + 1];
        if (l <= 1e-12L)
            continue;
        const long double a = plane[0] + plane[1] * coords[2 * k] + plane[2] * coords[2 * k + 1];
        const long double t = (heights[k] - a) / l;
        if (t > best)
        {
            best = t;
            at = k;
        }
    }
    CHECK(s.index == at);

    const std::vector<long double> nowhere{-10.0L, 0.0L, 0.0L};
    CHECK(wrap_scan(coords, heights, plane, nowhere, 1e-12L, Execution::parallel).index == n);
}

TEST_CASE("dp_stage matches brute force and is thread-independent")
{
    std::mt19937_64 gen(31);
    const StageShape shape{{4, 3}, {3, 2}};
    const std::size_t states = 5 * 4, tuples = 3 * 2;
    std::vector<double> prev(states), gain(tuples);
    for (auto &v : prev)
        v = test::uniform(gen, 0.0, 1.0);
    prev[7] = -INFINITY;
    for (auto &g : gain)
        g = std::floor(test::uniform(gen, 0.0, 3.0));
    std::vector<double> ns(states), np(states);
    std::vector<std::size_t> cs(states), cp(states);
    dp_stage(shape, prev, gain, ns, cs, Execution::serial);
    dp_stage(shape, prev, gain, np, cp, Execution::parallel);
    CHECK(ns == np);
    CHECK(cs == cp);
    for (std::size_t u0 = 0; u0 <= 4; ++u0)
        for (std::size_t u1 = 0; u1 <= 3; ++u1)
        {
            double best = -INFINITY;
            std::size_t choice = tuples;
            for (std::size_t k0 = 0; k0 < 3 && k0 <= u0; ++k0)
                for (std::size_t k1 = 0; k1 < 2 && k1 <= u1; ++k1)
                {
                    const double v = prev[(u0 - k0) * 4 + (u1 - k1)] + gain[k0 * 2 + k1];
                    if (v > best)
                    {
                        best = v;
                        choice = k0 * 2 + k1;
                    }
                }
            CHECK(ns[u0 * 4 + u1] == best);
            CHECK(cs[u0 * 4 + u1] == choice);
        }
}
