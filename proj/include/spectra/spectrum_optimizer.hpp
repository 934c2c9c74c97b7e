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
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "spectra/channel_model.hpp"
#include "spectra/concave_envelope.hpp"
#include "spectra/linear_program.hpp"
#include "spectra/optimization_result.hpp"
#include "spectra/parallel.hpp"

namespace spectra
{

using HullSet = std::vector<std::shared_ptr<const HullFunction>>;

/// Hulls keyed by sub-channel, channel parameters, weights and grid. Budgets are not
/// part of the key, so re-solving with new budgets reuses the built hulls.
class HullCache
{
public:
    std::shared_ptr<const HullFunction> get(const ChannelSpec &spec, std::size_t m, const GridConfig &config,
                                            Execution exec = Execution::parallel);
    std::size_t size() const;
    // Number of hulls actually constructed (cache misses).
    std::size_t builds() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const HullFunction>> hulls_;
    std::size_t builds_ = 0;
};

/// One hull per sub-channel, built in parallel across sub-channels.
HullSet build_hulls(const ChannelSpec &spec, const GridConfig &config, HullCache *cache = nullptr,
                    Execution exec = Execution::parallel);

/// Weighted sum-rate maximization over the grid-restricted envelopes, as a linear program
/// over convex-combination weights of hull vertices per sub-channel.
OptimizationResult solve(const ChannelSpec &spec, const HullSet &hulls, const LpOptions &options = {});

struct DualValue
{
    // Sum_m b_m max_P [R_m(P) - lambda . P] + lambda . p over raw grid points.
    double value = 0.0;
    // Same with the hull vertices and extended values.
    double hull_value = 0.0;
    // Maximizing grid index per sub-channel.
    std::vector<std::size_t> argmax;
};

DualValue dual_value(const ChannelSpec &spec, const HullSet &hulls, std::span<const double> lambda,
                     Execution exec = Execution::parallel);

/// Lay out each sub-channel's decomposition as flat pieces of width b_m * weight,
/// heaviest first (ties by vertex), at the realizing PSD.
SpectrumAllocation reconstruct_allocation(const ChannelSpec &spec,
                                          const std::vector<CaratheodoryDecomposition> &decompositions);

} // namespace spectra
