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

#include "spectra/fdma_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spectra
{

FlatFdmaSplit flat_fdma_reallocate(std::span<const double> psd)
{
    for (double p : psd)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("PSD must be finite and non-negative");
    const double total = std::accumulate(psd.begin(), psd.end(), 0.0);
    if (!(total > 0.0))
        throw std::invalid_argument("flat FDMA reallocation needs positive total PSD");
    FlatFdmaSplit out;
    out.psd = total;
    out.widths.reserve(psd.size());
    for (double p : psd)
        out.widths.push_back(p / total);
    return out;
}

PairVerdict pairwise_fdma_condition(const ChannelSpec &spec, std::size_t i, std::size_t j,
                                    std::span<const std::size_t> band)
{
    if (i == j)
        throw std::invalid_argument("pairwise condition needs two distinct users");
    if (i >= spec.users() || j >= spec.users())
        throw std::invalid_argument("user index out of range");
    PairVerdict v{i, j, !band.empty(), {}};
    v.per_subchannel.reserve(band.size());
    for (std::size_t m : band)
    {
        const bool ok = spec.alpha(m, j, i) >= kStrongCoupling && spec.alpha(m, i, j) >= kStrongCoupling;
        v.per_subchannel.push_back(ok);
        v.certified = v.certified && ok;
    }
    return v;
}

PairVerdict pairwise_fdma_condition(const ChannelSpec &spec, std::size_t i, std::size_t j)
{
    std::vector<std::size_t> all(spec.subchannels());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return pairwise_fdma_condition(spec, i, j, all);
}

FdmaDecision fdma_decision(const ChannelSpec &spec)
{
    FdmaDecision out;
    out.per_subchannel.resize(spec.subchannels());
    for (std::size_t i = 0; i < spec.users(); ++i)
        for (std::size_t j = i + 1; j < spec.users(); ++j)
        {
            auto v = pairwise_fdma_condition(spec, i, j);
            for (std::size_t m = 0; m < v.per_subchannel.size(); ++m)
                if (v.per_subchannel[m])
                    out.per_subchannel[m].emplace_back(i, j);
            if (v.certified)
                out.pairs.emplace_back(i, j);
            out.verdicts.push_back(std::move(v));
        }
    return out;
}

double fdma_power_region_threshold(double alpha)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("cross gain must be positive");
    return 2.0 * (1.0 / (2.0 * alpha * alpha) - 1.0 / alpha);
}

double sharing_sum_rate(double alpha, double p1, double p2)
{
    return std::log1p(p1 / (1.0 + alpha * p2)) + std::log1p(p2 / (1.0 + alpha * p1));
}

double reallocated_sum_rate(double p1, double p2)
{
    // Both users end up at PSD p1 + p2 on complementary fractions of the band.
    return std::log1p(p1 + p2);
}

double fdma_gain_indicator(double alpha, double p1, double p2)
{
    return p1 * p2 * (alpha * alpha * (p1 + p2) + 2.0 * alpha - 1.0);
}

ReallocationResult reallocation_gain(const FlatChannel &link, std::span<const double> psd,
                                     std::span<const std::size_t> group)
{
    const std::size_t k = link.users;
    if (psd.size() != k)
        throw std::invalid_argument("PSD vector needs one entry per user");
    if (group.empty())
        throw std::invalid_argument("reallocation group must be non-empty");
    std::vector<bool> member(k, false);
    for (std::size_t g : group)
    {
        if (g >= k || member[g])
            throw std::invalid_argument("reallocation group has a bad or repeated index");
        member[g] = true;
    }

    auto before = rate_density(link, psd);

    std::vector<double> group_psd;
    for (std::size_t g : group)
        group_psd.push_back(psd[g]);
    const auto split = flat_fdma_reallocate(group_psd);

    // Group sub-bands laid out in ascending user index.
    std::vector<std::size_t> order(group.begin(), group.end());
    std::sort(order.begin(), order.end());

    std::vector<BandPiece> pieces;
    std::vector<double> after(k, 0.0);
    double cursor = 0.0;
    for (std::size_t n = 0; n < order.size(); ++n)
    {
        const std::size_t g = order[n];
        const double width = psd[g] / split.psd;
        if (width <= 0.0)
            continue;
        std::vector<double> local(psd.begin(), psd.end());
        for (std::size_t h : order)
            local[h] = 0.0;
        local[g] = split.psd;
        for (std::size_t i = 0; i < k; ++i)
            if (!member[i] || i == g)
                after[i] += width * user_rate_density(link, i, local);
        const double end = n + 1 == order.size() ? 1.0 : cursor + width;
        pieces.push_back(BandPiece{cursor, end, std::move(local)});
        cursor = end;
    }
    pieces.back().end = 1.0;
    return ReallocationResult{SpectrumAllocation(std::move(pieces)), std::move(before), std::move(after)};
}

} // namespace spectra
