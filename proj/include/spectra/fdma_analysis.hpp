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
#include <utility>
#include <vector>

#include "spectra/channel_model.hpp"

namespace spectra
{

// Coupling level at which orthogonalizing a pair never hurts anyone. Compared with >=.
inline constexpr double kStrongCoupling = 0.5;

/// Flat-FDMA reallocation of a flat sharing band of unit width: user i moves all of
/// its power into a sub-band of width P_i / sum(P) at PSD sum(P).
struct FlatFdmaSplit
{
    std::vector<double> widths;
    double psd = 0.0;
};

FlatFdmaSplit flat_fdma_reallocate(std::span<const double> psd);

struct PairVerdict
{
    std::size_t i = 0;
    std::size_t j = 0;
    bool certified = false;
    // One entry per inspected sub-channel; true where alpha_ij >= 1/2 and alpha_ji >= 1/2.
    std::vector<bool> per_subchannel;
};

PairVerdict pairwise_fdma_condition(const ChannelSpec &spec, std::size_t i, std::size_t j);
PairVerdict pairwise_fdma_condition(const ChannelSpec &spec, std::size_t i, std::size_t j,
                                    std::span<const std::size_t> band);

struct FdmaDecision
{
    // Pairs certified on every sub-channel.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_subchannel;
    std::vector<PairVerdict> verdicts;
};

FdmaDecision fdma_decision(const ChannelSpec &spec);

/// Sum power above which flat FDMA beats flat sharing in a symmetric two-user band
/// (noise normalized to 1): 2 (1 / (2 alpha^2) - 1 / alpha). Non-positive for alpha >= 1/2.
double fdma_power_region_threshold(double alpha);

// Symmetric two-user sum-rates with unit noise.
double sharing_sum_rate(double alpha, double p1, double p2);
double reallocated_sum_rate(double p1, double p2);

/// p1 p2 (alpha^2 (p1 + p2) + 2 alpha - 1); its sign is the sign of
/// reallocated_sum_rate - sharing_sum_rate.
double fdma_gain_indicator(double alpha, double p1, double p2);

struct ReallocationResult
{
    SpectrumAllocation allocation;
    std::vector<double> rates_before;
    std::vector<double> rates_after;
};

/// Rates of all users in one flat unit band before and after the members of `group`
/// are orthogonalized by a flat-FDMA reallocation. Outsiders keep their flat PSD.
ReallocationResult reallocation_gain(const FlatChannel &link, std::span<const double> psd,
                                     std::span<const std::size_t> group);

} // namespace spectra
