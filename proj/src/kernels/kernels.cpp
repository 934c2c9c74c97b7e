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

#include "spectra/kernels.hpp"

#include <cmath>
#include <omp.h>
#include <stdexcept>

namespace spectra::kernels
{

namespace
{

inline bool better(double v, std::size_t k, const Argmax &best)
{
    return v > best.value || (v == best.value && k < best.index);
}

inline bool better(long double t, std::size_t k, const WrapCandidate &best)
{
    return t > best.t || (t == best.t && k < best.index);
}

template <class Body>
void for_points(std::size_t n, Execution exec, Body &&body)
{
    if (exec == Execution::serial)
    {
        for (std::size_t k = 0; k < n; ++k)
            body(k);
        return;
    }
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t k = 0; k < count; ++k)
        body(static_cast<std::size_t>(k));
}

// Splits [0, n) into one contiguous block per thread; scan(lo, hi) results come back in block order.
template <class Result, class Scan>
std::vector<Result> scan_blocks(std::size_t n, Execution exec, Scan &&scan)
{
    if (exec == Execution::serial)
        return {scan(std::size_t{0}, n)};
    std::vector<Result> partial(static_cast<std::size_t>(worker_count()));
#pragma omp parallel num_threads(static_cast<int>(partial.size()))
    {
        const auto t = static_cast<std::size_t>(omp_get_thread_num());
        const auto count = static_cast<std::size_t>(omp_get_num_threads());
        partial[t] = scan(n * t / count, n * (t + 1) / count);
    }
    return partial;
}

} // namespace

void evaluate_grid(const FlatChannel &link, std::span<const double> weights, const PowerGrid &grid,
                   std::span<double> out, Execution exec)
{
    if (out.size() != grid.size() || grid.dims() != link.users)
        throw std::invalid_argument("grid and output disagree in size");
    for_points(grid.size(), exec, [&](std::size_t k) {
        double p[64];
        std::vector<double> heap;
        std::span<double> psd(p, grid.dims());
        if (grid.dims() > 64)
        {
            heap.resize(grid.dims());
            psd = heap;
        }
        grid.point(k, psd);
        out[k] = weighted_rate_density(link, weights, psd);
    });
}

Argmax price_max(std::span<const double> values, const PowerGrid &grid, std::span<const double> lambda,
                 Execution exec)
{
    if (values.size() != grid.size() || lambda.size() != grid.dims())
        throw std::invalid_argument("price vector or values disagree with grid");
    const std::size_t d = grid.dims();
    auto scan = [&](std::size_t lo, std::size_t hi) {
        Argmax best;
        best.index = lo;
        for (std::size_t k = lo; k < hi; ++k)
        {
            double cost = 0.0;
            std::size_t rest = k;
            for (std::size_t i = 0; i < d; ++i)
            {
                cost += lambda[i] * grid.axis(i)[rest / grid.stride(i)];
                rest %= grid.stride(i);
            }
            const double v = values[k] - cost;
            if (better(v, k, best))
            {
                best.value = v;
                best.index = k;
            }
        }
        return best;
    };
    Argmax best;
    for (const auto &p : scan_blocks<Argmax>(grid.size(), exec, scan))
        if (better(p.value, p.index, best))
            best = p;
    return best;
}

WrapCandidate wrap_scan(std::span<const long double> coords, std::span<const long double> heights,
                        std::span<const long double> plane, std::span<const long double> ridge,
                        long double threshold, Execution exec)
{
    const std::size_t n = heights.size();
    const std::size_t d = plane.size() - 1;
    auto scan = [&](std::size_t lo, std::size_t hi) {
        WrapCandidate best;
        best.index = n;
        for (std::size_t k = lo; k < hi; ++k)
        {
            const long double *q = coords.data() + k * d;
            long double l = ridge[0];
            for (std::size_t i = 0; i < d; ++i)
                l += ridge[i + 1] * q[i];
            if (!(l > threshold))
                continue;
            long double a = plane[0];
            for (std::size_t i = 0; i < d; ++i)
                a += plane[i + 1] * q[i];
            const long double t = (heights[k] - a) / l;
            if (best.index == n || better(t, k, best))
            {
                best.t = t;
                best.index = k;
            }
        }
        return best;
    };
    WrapCandidate best;
    best.index = n;
    for (const auto &p : scan_blocks<WrapCandidate>(n, exec, scan))
        if (p.index < n && std::isfinite(p.t) && (best.index == n || better(p.t, p.index, best)))
            best = p;
    return best;
}

void dp_stage(const StageShape &shape, std::span<const double> prev, std::span<const double> gain,
              std::span<double> next, std::span<std::size_t> choice, Execution exec)
{
    const std::size_t d = shape.units.size();
    if (d > 16)
        throw std::invalid_argument("stage supports at most 16 users");
    if (shape.levels.size() != d)
        throw std::invalid_argument("stage shape disagrees on user count");
    std::vector<std::size_t> ustride(d, 1), kstride(d, 1);
    std::size_t states = 1, tuples = 1;
    for (std::size_t i = d; i-- > 0;)
    {
        ustride[i] = states;
        states *= shape.units[i] + 1;
        kstride[i] = tuples;
        tuples *= shape.levels[i];
    }
    if (prev.size() != states || next.size() != states || choice.size() != states || gain.size() != tuples)
        throw std::invalid_argument("stage buffers disagree with shape");

    const double none = -std::numeric_limits<double>::infinity();
    for_points(states, exec, [&](std::size_t u) {
        std::size_t uu[16];
        std::size_t kmax[16];
        std::size_t k[16] = {};
        std::size_t rest = u;
        for (std::size_t i = 0; i < d; ++i)
        {
            uu[i] = rest / ustride[i];
            rest %= ustride[i];
            kmax[i] = std::min(uu[i], shape.levels[i] - 1);
        }
        double best = none;
        std::size_t arg = tuples;
        // Odometer over level tuples k <= min(u, levels - 1), ascending in flat order.
        while (true)
        {
            std::size_t kflat = 0, from = u;
            for (std::size_t i = 0; i < d; ++i)
            {
                kflat += k[i] * kstride[i];
                from -= k[i] * ustride[i];
            }
            const double base = prev[from];
            if (base != none)
            {
                const double v = base + gain[kflat];
                if (v > best)
                {
                    best = v;
                    arg = kflat;
                }
            }
            std::size_t i = d;
            while (i-- > 0)
            {
                if (k[i] < kmax[i])
                {
                    ++k[i];
                    break;
                }
                k[i] = 0;
            }
            if (i == static_cast<std::size_t>(-1))
                break;
        }
        next[u] = best;
        choice[u] = arg;
    });
}

} // namespace spectra::kernels
