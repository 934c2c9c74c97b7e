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

#include "spectra/power_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace spectra
{

PowerGrid::PowerGrid(std::vector<std::vector<double>> axes) : axes_(std::move(axes))
{
    strides_.assign(axes_.size(), 1);
    size_ = 1;
    for (std::size_t i = axes_.size(); i-- > 0;)
    {
        if (axes_[i].empty())
            throw std::invalid_argument("grid axis needs at least one breakpoint");
        strides_[i] = size_;
        size_ *= axes_[i].size();
    }
}

void PowerGrid::point(std::size_t index, std::span<double> out) const
{
    for (std::size_t i = 0; i < axes_.size(); ++i)
    {
        out[i] = axes_[i][index / strides_[i]];
        index %= strides_[i];
    }
}

std::vector<double> PowerGrid::point(std::size_t index) const
{
    std::vector<double> out(axes_.size());
    point(index, out);
    return out;
}

std::vector<std::size_t> PowerGrid::multi_index(std::size_t index) const
{
    std::vector<std::size_t> out(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i)
    {
        out[i] = index / strides_[i];
        index %= strides_[i];
    }
    return out;
}

std::size_t PowerGrid::flat_index(std::span<const std::size_t> multi) const
{
    std::size_t index = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        index += multi[i] * strides_[i];
    return index;
}

std::vector<double> axis_breakpoints(double upper, std::size_t points, double noise, double log_mix)
{
    if (!(upper >= 0.0) || !std::isfinite(upper))
        throw std::invalid_argument("grid upper bound must be finite and non-negative");
    if (upper == 0.0)
        return {0.0};
    if (points < 2)
        throw std::invalid_argument("grid needs at least 2 points per axis");
    if (!(log_mix >= 0.0 && log_mix <= 1.0))
        throw std::invalid_argument("log mix must lie in [0, 1]");
    const double scale = upper / noise;
    std::vector<double> out(points);
    for (std::size_t k = 0; k < points; ++k)
    {
        const double t = static_cast<double>(k) / static_cast<double>(points - 1);
        const double curved = std::expm1(t * std::log1p(scale)) / scale;
        out[k] = upper * (log_mix * t + (1.0 - log_mix) * curved);
    }
    out.front() = 0.0;
    out.back() = upper;
    return out;
}

} // namespace spectra
