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
#include <limits>
#include <span>
#include <vector>

#include "spectra/channel_model.hpp"
#include "spectra/parallel.hpp"
#include "spectra/power_grid.hpp"

// Hot loops shared by the envelope builder, the optimizer and the oracle. Every kernel
// has a serial and an OpenMP path that return identical results, ties included.
namespace spectra::kernels
{

/// out[k] = weighted sum-rate at grid point k.
void evaluate_grid(const FlatChannel &link, std::span<const double> weights, const PowerGrid &grid,
                   std::span<double> out, Execution exec = Execution::parallel);

struct Argmax
{
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

/// max_k values[k] - lambda . P_k over the grid; ties go to the lowest k.
Argmax price_max(std::span<const double> values, const PowerGrid &grid, std::span<const double> lambda,
                 Execution exec = Execution::parallel);

struct WrapCandidate
{
    long double t = -std::numeric_limits<long double>::infinity();
    // size() of the point set when nothing lies on the far side.
    std::size_t index = 0;
};

/// Gift-wrapping step over points in R^d with heights: among points with
/// l(Q) = l0 + l.Q > threshold, maximize (H(Q) - A(Q)) / l(Q) with A(Q) = a0 + g.Q.
/// `plane` and `ridge` hold (a0, g) and (l0, l); `coords` is row-major, d per point.
WrapCandidate wrap_scan(std::span<const long double> coords, std::span<const long double> heights,
                        std::span<const long double> plane, std::span<const long double> ridge,
                        long double threshold, Execution exec = Execution::parallel);

/// Shape of a dynamic-programming stage over per-user integer budgets.
struct StageShape
{
    // Budget units per user; states are row-major over (units[i] + 1).
    std::vector<std::size_t> units;
    // PSD levels per user; level tuples are row-major over levels[i].
    std::vector<std::size_t> levels;
};

/// next[u] = max over level tuples k <= u of prev[u - k] + gain[k]; choice[u] gets the
/// maximizing tuple (lowest on ties) or size of gain when u is unreachable.
void dp_stage(const StageShape &shape, std::span<const double> prev, std::span<const double> gain,
              std::span<double> next, std::span<std::size_t> choice, Execution exec = Execution::parallel);

} // namespace spectra::kernels
