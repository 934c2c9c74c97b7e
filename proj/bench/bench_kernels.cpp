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

// Serial against OpenMP timings for the hot kernels. Range argument 0 is serial, 1 is parallel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "spectra/kernels.hpp"

using namespace spectra;

namespace
{

Execution mode(const benchmark::State &state) { return state.range(0) ? Execution::parallel : Execution::serial; }

PowerGrid square_grid(std::size_t points, std::size_t users)
{
    std::vector<double> axis(points);
    for (std::size_t k = 0; k < points; ++k)
        axis[k] = 20.0 * static_cast<double>(k) / static_cast<double>(points - 1);
    return PowerGrid(std::vector<std::vector<double>>(users, axis));
}

FlatChannel ring(std::size_t users)
{
    FlatChannel link{users, std::vector<double>(users * users, 0.0), std::vector<double>(users, 1.0)};
    for (std::size_t j = 0; j < users; ++j)
        for (std::size_t i = 0; i < users; ++i)
            if (i != j)
                link.alpha[j * users + i] = 0.1 + 0.05 * static_cast<double>((i + 2 * j) % 5);
    return link;
}

void BM_evaluate_grid(benchmark::State &state)
{
    const auto grid = square_grid(33, 3);
    const auto link = ring(3);
    const std::vector<double> weights(3, 1.0);
    std::vector<double> out(grid.size());
    for (auto _ : state)
    {
        kernels::evaluate_grid(link, weights, grid, out, mode(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * grid.size()));
}

void BM_price_max(benchmark::State &state)
{
    const auto grid = square_grid(65, 3);
    const auto link = ring(3);
    const std::vector<double> weights(3, 1.0);
    std::vector<double> values(grid.size());
    kernels::evaluate_grid(link, weights, grid, values, Execution::serial);
    const std::vector<double> lambda{0.05, 0.07, 0.09};
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::price_max(values, grid, lambda, mode(state)));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * grid.size()));
}

void BM_wrap_scan(benchmark::State &state)
{
    constexpr std::size_t d = 2, n = 1 << 16;
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<long double> u(0.0L, 1.0L);
    std::vector<long double> coords(n * d), heights(n);
    for (auto &c : coords)
        c = u(gen);
    for (std::size_t k = 0; k < n; ++k)
        heights[k] = std::log1p(coords[k * d] + coords[k * d + 1]);
    const std::vector<long double> plane{0.0L, 0.3L, 0.3L}, ridge{-0.2L, 1.0L, 0.5L};
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::wrap_scan(coords, heights, plane, ridge, 0.0L, mode(state)));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}

void BM_dp_stage(benchmark::State &state)
{
    const kernels::StageShape shape{{36, 36}, {49, 49}};
    const std::size_t states = 37 * 37, tuples = 49 * 49;
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> prev(states), gain(tuples), next(states);
    std::vector<std::size_t> choice(states);
    for (auto &v : prev)
        v = u(gen);
    for (auto &v : gain)
        v = u(gen);
    for (auto _ : state)
    {
        kernels::dp_stage(shape, prev, gain, next, choice, mode(state));
        benchmark::DoNotOptimize(next.data());
    }
}

} // namespace

BENCHMARK(BM_evaluate_grid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_price_max)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_wrap_scan)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_dp_stage)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
