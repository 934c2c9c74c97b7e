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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spectra
{

/// Tensor grid of PSD vectors. Axis 0 varies slowest in the flat index.
class PowerGrid
{
public:
    PowerGrid() = default;
    explicit PowerGrid(std::vector<std::vector<double>> axes);

    std::size_t dims() const { return axes_.size(); }
    std::size_t size() const { return size_; }
    const std::vector<double> &axis(std::size_t i) const { return axes_.at(i); }
    const std::vector<std::vector<double>> &axes() const { return axes_; }
    double upper(std::size_t i) const { return axes_.at(i).back(); }
    std::size_t stride(std::size_t i) const { return strides_[i]; }

    void point(std::size_t index, std::span<double> out) const;
    std::vector<double> point(std::size_t index) const;
    std::vector<std::size_t> multi_index(std::size_t index) const;
    std::size_t flat_index(std::span<const std::size_t> multi) const;

private:
    std::vector<std::vector<double>> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

/// Breakpoints on [0, upper]: x(t) = upper (beta t + (1 - beta) ((1 + upper/noise)^t - 1) / (upper/noise))
/// at t = k / (points - 1). Doubling (points - 1) keeps every old breakpoint.
/// A zero upper bound collapses the axis to the single point 0.
std::vector<double> axis_breakpoints(double upper, std::size_t points, double noise, double log_mix);

} // namespace spectra
