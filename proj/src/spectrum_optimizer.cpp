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

#include "spectra/spectrum_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spectra
{

namespace
{

// LP weights at or below this are treated as zero.
constexpr double kWeightFloor = 1e-14;

std::string fingerprint(const ChannelSpec &spec, std::size_t m)
{
    std::string key = std::to_string(m);
    char buf[40];
    auto add = [&](double v) {
        std::snprintf(buf, sizeof buf, ",%a", v);
        key += buf;
    };
    const auto &link = spec.flat(m);
    for (double a : link.alpha)
        add(a);
    for (double n : link.noise)
        add(n);
    for (double w : spec.weights())
        add(w);
    return key;
}

} // namespace

std::shared_ptr<const HullFunction> HullCache::get(const ChannelSpec &spec, std::size_t m, const GridConfig &config,
                                                   Execution exec)
{
    const std::string key = fingerprint(spec, m) + "#" + config.key();
    {
        std::lock_guard lock(mutex_);
        if (auto it = hulls_.find(key); it != hulls_.end())
            return it->second;
    }
    auto hull = std::make_shared<const HullFunction>(build_hull(spec, m, config, exec));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = hulls_.emplace(key, hull);
    if (inserted)
        ++builds_;
    return it->second;
}

std::size_t HullCache::size() const
{
    std::lock_guard lock(mutex_);
    return hulls_.size();
}

std::size_t HullCache::builds() const
{
    std::lock_guard lock(mutex_);
    return builds_;
}

HullSet build_hulls(const ChannelSpec &spec, const GridConfig &config, HullCache *cache, Execution exec)
{
    GridConfig cfg = config;
    if (cfg.upper.empty() || cfg.points.empty())
    {
        const auto base = default_grid(spec);
        if (cfg.upper.empty())
            cfg.upper = base.upper;
        if (cfg.points.empty())
            cfg.points = base.points;
    }
    const std::size_t M = spec.subchannels();
    HullSet hulls(M);
    auto one = [&](std::size_t m, Execution inner) {
        hulls[m] = cache ? cache->get(spec, m, cfg, inner)
                         : std::make_shared<const HullFunction>(build_hull(spec, m, cfg, inner));
    };
    if (exec == Execution::serial || M == 1)
    {
        for (std::size_t m = 0; m < M; ++m)
            one(m, exec);
        return hulls;
    }
    // Sub-channels in parallel; exceptions are carried out of the region by index.
    std::vector<std::exception_ptr> errors(M);
    const auto count = static_cast<std::ptrdiff_t>(M);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::ptrdiff_t m = 0; m < count; ++m)
    {
        try
        {
            one(static_cast<std::size_t>(m), Execution::serial);
        }
        catch (...)
        {
            errors[static_cast<std::size_t>(m)] = std::current_exception();
        }
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return hulls;
}

SpectrumAllocation reconstruct_allocation(const ChannelSpec &spec,
                                          const std::vector<CaratheodoryDecomposition> &decompositions)
{
    if (decompositions.size() != spec.subchannels())
        throw std::invalid_argument("need one decomposition per sub-channel");
    const auto &edges = spec.edges();
    std::vector<BandPiece> pieces;
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        auto terms = decompositions[m].terms;
        double total = 0.0;
        for (const auto &t : terms)
        {
            if (!(t.weight >= 0.0))
                throw std::invalid_argument("decomposition weights must be non-negative");
            total += t.weight;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("decomposition weights of sub-channel " + std::to_string(m) +
                                        " sum to " + std::to_string(total));
        std::stable_sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
            return a.weight != b.weight ? a.weight > b.weight : a.vertex < b.vertex;
        });
        double cursor = edges[m];
        const std::size_t first = pieces.size();
        for (const auto &t : terms)
        {
            const double width = spec.bandwidth(m) * t.weight;
            if (!(width > 0.0))
                continue;
            const auto &psd = t.realizer.empty() ? t.psd : t.realizer;
            pieces.push_back(BandPiece{cursor, cursor + width, psd});
            cursor += width;
        }
        if (pieces.size() == first)
            throw std::invalid_argument("decomposition of sub-channel " + std::to_string(m) + " is empty");
        pieces.back().end = edges[m + 1];
    }
    return SpectrumAllocation(std::move(pieces));
}

OptimizationResult solve(const ChannelSpec &spec, const HullSet &hulls, const LpOptions &options)
{
    const std::size_t K = spec.users();
    const std::size_t M = spec.subchannels();
    if (hulls.size() != M)
        throw std::invalid_argument("need one hull per sub-channel");
    const auto &budgets = spec.budgets();

    std::vector<std::size_t> user_rows;
    for (std::size_t i = 0; i < K; ++i)
        if (budgets[i] > 0.0)
            user_rows.push_back(i);

    struct Column
    {
        std::size_t m, vertex;
    };
    std::vector<Column> columns;
    for (std::size_t m = 0; m < M; ++m)
    {
        const auto &hull = hulls[m];
        if (!hull || hull->users() != K)
            throw std::invalid_argument("hull of sub-channel " + std::to_string(m) + " does not match the channel");
        const std::size_t before = columns.size();
        for (std::size_t v = 0; v < hull->vertices().size(); ++v)
        {
            const auto &psd = hull->vertices()[v].psd;
            bool usable = true;
            for (std::size_t i = 0; i < K; ++i)
                if (budgets[i] == 0.0 && psd[i] > 0.0)
                    usable = false;
            if (usable)
                columns.push_back({m, v});
        }
        if (columns.size() == before)
            throw std::invalid_argument("hull of sub-channel " + std::to_string(m) + " is empty");
    }

    const auto rows = static_cast<Eigen::Index>(user_rows.size() + M);
    const auto cols = static_cast<Eigen::Index>(columns.size());
    LinearProgram lp;
    lp.A = Eigen::MatrixXd::Zero(rows, cols);
    lp.b = Eigen::VectorXd::Ones(rows);
    lp.c.resize(cols);
    lp.sense.assign(user_rows.size(), RowSense::less_equal);
    lp.sense.resize(static_cast<std::size_t>(rows), RowSense::equal);
    for (Eigen::Index k = 0; k < cols; ++k)
    {
        const auto [m, v] = columns[static_cast<std::size_t>(k)];
        const auto &vx = hulls[m]->vertices()[v];
        const double b = spec.bandwidth(m);
        for (std::size_t r = 0; r < user_rows.size(); ++r)
        {
            const std::size_t i = user_rows[r];
            lp.A(static_cast<Eigen::Index>(r), k) = b * vx.psd[i] / budgets[i];
        }
        lp.A(static_cast<Eigen::Index>(user_rows.size() + m), k) = 1.0;
        lp.c[k] = b * vx.value;
    }

    const auto res = solve_lp(lp, options);
    if (res.status != LpStatus::optimal)
        throw std::runtime_error(std::string("envelope LP did not reach an optimum: ") + to_string(res.status));

    std::vector<CaratheodoryDecomposition> decompositions(M);
    for (Eigen::Index k = 0; k < cols; ++k)
    {
        if (res.x[k] <= kWeightFloor)
            continue;
        const auto [m, v] = columns[static_cast<std::size_t>(k)];
        const auto &vx = hulls[m]->vertices()[v];
        decompositions[m].terms.push_back({res.x[k], v, vx.psd, vx.realizer, vx.value});
    }
    double value = 0.0;
    for (std::size_t m = 0; m < M; ++m)
    {
        auto &terms = decompositions[m].terms;
        double total = 0.0;
        for (const auto &t : terms)
            total += t.weight;
        for (auto &t : terms)
            t.weight /= total;
        value += spec.bandwidth(m) * decompositions[m].value();
    }

    SpectrumAllocation alloc = reconstruct_allocation(spec, decompositions);
    auto rates = total_rates(spec, alloc);
    auto power = alloc.powers();

    std::vector<double> prices(K, 0.0);
    for (std::size_t r = 0; r < user_rows.size(); ++r)
        prices[user_rows[r]] = std::max(0.0, res.y[static_cast<Eigen::Index>(r)]) / budgets[user_rows[r]];

    SolverDiagnostics diag;
    diag.iterations = res.iterations;
    diag.degenerate_optimum = res.degenerate_optimum;
    for (std::size_t i = 0; i < K; ++i)
    {
        diag.primal_residual = std::max(diag.primal_residual, power[i] - budgets[i]);
        diag.slackness_residual += prices[i] * (budgets[i] - power[i]);
    }
    diag.primal_residual = std::max(0.0, diag.primal_residual);
    if (res.degenerate_optimum)
        diag.notes.push_back("optimum is not unique; the returned vertex set follows the fixed pivot order");

    const auto dual = dual_value(spec, hulls, prices);
    OptimizationResult out{value, std::move(alloc), std::move(rates.rates), std::move(power),
                           std::move(prices), dual.value - value, std::move(diag)};
    return out;
}

DualValue dual_value(const ChannelSpec &spec, const HullSet &hulls, std::span<const double> lambda, Execution exec)
{
    const std::size_t K = spec.users();
    if (lambda.size() != K)
        throw std::invalid_argument("need one price per user");
    for (double l : lambda)
        if (!(l >= 0.0) || !std::isfinite(l))
            throw std::invalid_argument("prices must be finite and non-negative");
    if (hulls.size() != spec.subchannels())
        throw std::invalid_argument("need one hull per sub-channel");
    DualValue out;
    double budget_term = 0.0;
    for (std::size_t i = 0; i < K; ++i)
        budget_term += lambda[i] * spec.budgets()[i];
    out.value = out.hull_value = budget_term;
    for (std::size_t m = 0; m < hulls.size(); ++m)
    {
        const double b = spec.bandwidth(m);
        const auto raw = hulls[m]->price_max(lambda, exec);
        out.value += b * raw.value;
        out.argmax.push_back(raw.index);
        out.hull_value += b * hulls[m]->vertex_price_max(lambda).value;
    }
    return out;
}

} // namespace spectra
