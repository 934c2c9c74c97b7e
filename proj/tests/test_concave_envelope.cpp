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
#include <sstream>

#include "spectra/concave_envelope.hpp"
#include "spectra/linear_program.hpp"
#include "spectra/symmetric_two_user.hpp"
#include "support.hpp"

using namespace spectra;
using doctest::Approx;

namespace
{

// max sum c_k R(P_k) s.t. sum c_k P_k <= psd, sum c_k = 1 over all raw grid points. The hull is
// monotone, so free disposal gives the same function as the monotone-extended envelope.
double lp_envelope(const HullFunction &h, std::span<const double> psd)
{
    const auto &grid = h.grid();
    const auto K = static_cast<Eigen::Index>(grid.dims());
    const auto n = static_cast<Eigen::Index>(grid.size());
    LinearProgram lp;
    lp.A.setZero(K + 1, n);
    lp.b.resize(K + 1);
    lp.c.resize(n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const auto p = grid.point(static_cast<std::size_t>(k));
        for (Eigen::Index i = 0; i < K; ++i)
            lp.A(i, k) = p[static_cast<std::size_t>(i)];
        lp.A(K, k) = 1.0;
        lp.c(k) = h.rates()[static_cast<std::size_t>(k)];
    }
    for (Eigen::Index i = 0; i < K; ++i)
        lp.b(i) = psd[static_cast<std::size_t>(i)];
    lp.b(K) = 1.0;
    lp.sense.assign(static_cast<std::size_t>(K), RowSense::less_equal);
    lp.sense.push_back(RowSense::equal);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    return r.value;
}

std::vector<double> random_point(std::mt19937_64 &gen, const HullFunction &h)
{
    std::vector<double> p(h.users());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = test::uniform(gen, 0.0, h.grid().upper(i));
    return p;
}

} // namespace

TEST_CASE("single user hull is the rate itself")
{
    const ChannelSpec spec(1, {SubChannel{1.0, FlatChannel{1, {0.0}, {0.5}}}}, {2.0}, {3.0});
    const auto h = build_hull(spec, 0, default_grid(spec));
    CHECK(h.vertices().size() == h.grid().size());
    for (std::size_t k = 0; k < h.grid().size(); ++k)
    {
        const auto p = h.grid().point(k);
        CHECK(h.evaluate(p) == Approx(2.0 * std::log(1.0 + p[0] / 0.5)).epsilon(1e-12));
    }
}

TEST_CASE("weighted sum rate")
{
    const auto spec = test::symmetric_flat(0.1, 80.0);
    const std::vector<double> p{40.0, 40.0};
    CHECK(weighted_sum_rate(spec, 0, p) == Approx(std::log(81.0)).epsilon(1e-14));
    const auto masked = spec.with_weights({1.0, 0.0});
    CHECK(weighted_sum_rate(masked, 0, p) == Approx(std::log(9.0)).epsilon(1e-14));
    std::mt19937_64 gen(3);
    const auto twice = spec.with_weights({2.0, 1.0});
    const std::vector<double> q{test::uniform(gen, 0, 9), test::uniform(gen, 0, 9)};
    const auto r = rate_density(spec, 0, q);
    CHECK(weighted_sum_rate(twice, 0, q) == Approx(2 * r[0] + r[1]).epsilon(1e-14));
}

TEST_CASE("two-user hull dominates, matches at vertices and agrees with the LP envelope")
{
    std::mt19937_64 gen(7);
    const ChannelSpec spec(2, {SubChannel{1.0, FlatChannel{2, {0.0, 0.3, 0.15, 0.0}, {1.0, 0.5}}}}, {1.0, 1.5},
                           {4.0, 6.0});
    auto grid = default_grid(spec, 17);
    const auto h = build_hull(spec, 0, grid);
    REQUIRE(h.has_facets());
    for (const auto &v : h.vertices())
        CHECK(h.evaluate(v.psd) == Approx(v.value).epsilon(1e-12));
    for (std::size_t k = 0; k < h.grid().size(); ++k)
        CHECK(h.evaluate(h.grid().point(k)) >= h.rates()[k] - 1e-12);
    for (int trial = 0; trial < 40; ++trial)
    {
        const auto p = random_point(gen, h);
        CHECK(h.evaluate(p) == Approx(lp_envelope(h, p)).epsilon(1e-7));
        const auto a = h.vertices()[gen() % h.vertices().size()], b = h.vertices()[gen() % h.vertices().size()];
        const std::vector<double> mid{0.5 * (a.psd[0] + b.psd[0]), 0.5 * (a.psd[1] + b.psd[1])};
        CHECK(h.evaluate(mid) >= 0.5 * (a.value + b.value) - 1e-12);
    }
}

TEST_CASE("decompositions have at most K+1 terms and recombine")
{
    std::mt19937_64 gen(13);
    for (std::size_t users : {2u, 3u})
    {
        const auto spec = test::random_spec(gen, users, 1);
        const auto h = build_hull(spec, 0, default_grid(spec, users == 2 ? 17 : 9));
        for (int trial = 0; trial < 30; ++trial)
        {
            const auto p = random_point(gen, h);
            const auto d = h.decompose(p);
            CHECK(d.terms.size() <= users + 1);
            double wsum = 0.0;
            for (const auto &t : d.terms)
            {
                wsum += t.weight;
                CHECK(t.weight > 0.0);
            }
            CHECK(wsum == Approx(1.0).epsilon(1e-12));
            const auto back = d.point();
            for (std::size_t i = 0; i < users; ++i)
                CHECK(back[i] == Approx(p[i]).epsilon(1e-9).scale(h.grid().upper(i)));
            CHECK(d.value() == Approx(h.evaluate(p)).epsilon(1e-9));
            // Realizers sit below their vertex and carry its value with the raw rate.
            for (const auto &t : d.terms)
                for (std::size_t i = 0; i < users; ++i)
                    CHECK(t.realizer[i] <= t.psd[i]);
        }
    }
}

TEST_CASE("vertex decomposes to itself")
{
    const auto spec = test::symmetric_flat(0.1, 100.0);
    const auto h = build_hull(spec, 0, default_grid(spec, 17));
    const auto &v = h.vertices()[h.vertices().size() / 2];
    const auto d = h.decompose(v.psd);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].weight == 1.0);
    CHECK(d.terms[0].psd == v.psd);
}

TEST_CASE("symmetric mixture decomposes into sharing and FDMA points")
{
    const auto spec = test::symmetric_flat(0.1, 100.0);
    const auto h = build_hull(spec, 0, default_grid(spec, 65));
    const std::vector<double> p{50.0, 50.0};
    const auto d = h.decompose(p);
    const auto env = r_star_flat(0.1, 100.0);
    double sharing = 0.0, fdma = 0.0;
    for (const auto &t : d.terms)
    {
        const double lo = std::min(t.realizer[0], t.realizer[1]), hi = std::max(t.realizer[0], t.realizer[1]);
        MESSAGE("term " << t.weight << " at (" << t.realizer[0] << ", " << t.realizer[1] << ")");
        if (lo > 0.5 * hi)
            sharing += t.weight;
        else if (lo < 0.05 * hi)
            fdma += t.weight;
    }
    CHECK(sharing + fdma == Approx(1.0));
    CHECK(fdma == Approx(env.lambda).epsilon(0.05));
    CHECK(d.value() <= env.value + 1e-9);
    CHECK(env.value - d.value() <= h.interpolation_bound(p));
}

TEST_CASE("symmetric section approaches the closed-form envelope under refinement")
{
    const auto spec = test::symmetric_flat(0.1, 100.0);
    const auto coarse_cfg = default_grid(spec, 33);
    const auto coarse = build_hull(spec, 0, coarse_cfg);
    const auto fine = build_hull(spec, 0, refined(coarse_cfg));
    for (double p : {10.0, 40.0, 60.0, 80.0, 100.0, 110.0, 150.0})
    {
        CAPTURE(p);
        const std::vector<double> q{p / 2, p / 2};
        const double exact = r_star_flat(0.1, p).value;
        const double c = coarse.evaluate(q), f = fine.evaluate(q);
        CHECK(c <= exact + 1e-9);
        CHECK(f <= exact + 1e-9);
        CHECK(f >= c - 1e-12);
        CHECK(exact - c <= coarse.interpolation_bound(q));
        CHECK(exact - f <= fine.interpolation_bound(q));
        CHECK(fine.interpolation_bound(q) < 0.5 * coarse.interpolation_bound(q));
    }
}

TEST_CASE("queries outside the box report the box they need")
{
    const auto spec = test::symmetric_flat(0.1, 10.0);
    const auto h = build_hull(spec, 0, default_grid(spec, 9));
    const std::vector<double> far{1e6, 0.0};
    try
    {
        h.evaluate(far);
        FAIL("expected BoxError");
    }
    catch (const BoxError &e)
    {
        REQUIRE(e.required.size() == 2);
        CHECK(e.required[0] >= 1e6);
    }
    GridConfig bad = default_grid(spec);
    bad.points = {1, 1};
    CHECK_THROWS_AS(build_hull(spec, 0, bad), std::invalid_argument);
}

TEST_CASE("four users fall back to the LP evaluation")
{
    std::mt19937_64 gen(19);
    const auto spec = test::random_spec(gen, 4, 1);
    const auto h = build_hull(spec, 0, default_grid(spec, 5));
    CHECK_FALSE(h.has_facets());
    const auto p = random_point(gen, h);
    CHECK(h.evaluate(p) == Approx(lp_envelope(h, p)).epsilon(1e-7));
    const auto d = h.decompose(p);
    CHECK(d.terms.size() <= 5);
    CHECK(d.value() == Approx(h.evaluate(p)).epsilon(1e-9));
}

TEST_CASE("zero budget collapses an axis")
{
    const ChannelSpec spec(2, {SubChannel{1.0, test::symmetric_link(0.2)}}, {1, 1}, {5.0, 0.0});
    const auto h = build_hull(spec, 0, default_grid(spec));
    CHECK(h.grid().axis(1).size() == 1);
    const std::vector<double> p{3.0, 0.0};
    // Single-user section: exact up to interpolation between breakpoints.
    CHECK(h.evaluate(p) <= std::log(4.0) + 1e-12);
    CHECK(h.evaluate(p) >= std::log(4.0) - h.interpolation_bound(p));
}

TEST_CASE("hull CSV has one header and a row per grid point")
{
    const auto spec = test::symmetric_flat(0.1, 10.0);
    const auto h = build_hull(spec, 0, default_grid(spec, 5));
    std::ostringstream out;
    write_hull_csv(out, h);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "P_1,P_2,R,R_star");
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == h.grid().size());
}
