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
#include <stdexcept>
#include <string>
#include <vector>

namespace spectra
{

inline constexpr double kDefaultNoiseFloor = 1e-12;

// Tolerance on sum(b_m) == 1 held by a constructed ChannelSpec.
inline constexpr double kBandSumTolerance = 1e-12;

// Tolerance used when checking that pieces tile [0, 1] and nest inside sub-channels.
inline constexpr double kFrequencyTolerance = 1e-12;

/// Parameters of one flat band, normalized by the direct gains.
///
/// `alpha[j * users + i]` is the cross gain from transmitter j into receiver i
/// divided by receiver i's direct gain. Diagonal entries are ignored and kept at 0.
struct FlatChannel
{
    std::size_t users = 0;
    std::vector<double> alpha;
    std::vector<double> noise;

    double cross_gain(std::size_t from, std::size_t to) const { return alpha[from * users + to]; }

    // Total interference-plus-noise PSD seen by receiver i.
    double interference(std::size_t i, std::span<const double> psd) const;
};

struct SubChannel
{
    double bandwidth = 0.0;
    FlatChannel link;
};

/// Normalized K-user interference channel over the unit band.
///
/// Invariants are checked on construction; instances are immutable.
class ChannelSpec
{
public:
    ChannelSpec(std::size_t users, std::vector<SubChannel> subchannels, std::vector<double> weights,
                std::vector<double> budgets, double noise_floor = kDefaultNoiseFloor);

    std::size_t users() const { return users_; }
    std::size_t subchannels() const { return subchannels_.size(); }

    const SubChannel &subchannel(std::size_t m) const { return subchannels_.at(m); }
    const FlatChannel &flat(std::size_t m) const { return subchannels_.at(m).link; }
    double bandwidth(std::size_t m) const { return subchannels_.at(m).bandwidth; }
    double alpha(std::size_t m, std::size_t from, std::size_t to) const { return flat(m).cross_gain(from, to); }
    double noise(std::size_t m, std::size_t i) const { return flat(m).noise.at(i); }

    const std::vector<double> &weights() const { return weights_; }
    const std::vector<double> &budgets() const { return budgets_; }
    double noise_floor() const { return noise_floor_; }

    // Sub-channel m occupies [edges()[m], edges()[m + 1]].
    const std::vector<double> &edges() const { return edges_; }
    std::size_t locate(double f_start, double f_end) const;

    ChannelSpec with_budgets(std::vector<double> budgets) const;
    ChannelSpec with_weights(std::vector<double> weights) const;

private:
    std::size_t users_;
    std::vector<SubChannel> subchannels_;
    std::vector<double> weights_;
    std::vector<double> budgets_;
    double noise_floor_;
    std::vector<double> edges_;
};

/// Channel description in raw (unnormalized) terms.
///
/// `gain[j * users + i]` is |H_ji|^2 for one sub-channel; the diagonal holds the direct gains.
struct RawSubChannel
{
    double bandwidth = 0.0;
    std::vector<double> gain;
    std::vector<double> sigma;
};

struct RawChannelSpec
{
    std::size_t users = 0;
    std::vector<RawSubChannel> subchannels;
    std::vector<double> weights;
    std::vector<double> budgets;
    double noise_floor = kDefaultNoiseFloor;
};

/// Reported for a zero (or negative) direct gain during normalization.
class DirectGainError : public std::invalid_argument
{
public:
    DirectGainError(std::size_t user, std::size_t subchannel);
    std::size_t user;
    std::size_t subchannel;
};

struct BandPiece
{
    double start = 0.0;
    double end = 0.0;
    std::vector<double> psd;

    double width() const { return end - start; }
};

/// Piecewise-flat PSD vector function on [0, 1].
class SpectrumAllocation
{
public:
    explicit SpectrumAllocation(std::vector<BandPiece> pieces);

    static SpectrumAllocation flat(std::vector<double> psd);

    std::size_t users() const { return pieces_.front().psd.size(); }
    const std::vector<BandPiece> &pieces() const { return pieces_; }

    // Integrated power per user.
    std::vector<double> powers() const;

private:
    std::vector<BandPiece> pieces_;
};

struct RateVector
{
    std::vector<double> rates;

    double weighted(std::span<const double> weights) const;
    double sum() const;
};

ChannelSpec normalize(const RawChannelSpec &raw);

/// r_i = ln(1 + P_i / (n_i + sum_{j != i} alpha_ji P_j)) for every user.
std::vector<double> rate_density(const FlatChannel &link, std::span<const double> psd);
std::vector<double> rate_density(const ChannelSpec &spec, std::size_t m, std::span<const double> psd);

// Unchecked single-user and weighted forms for inner loops.
double user_rate_density(const FlatChannel &link, std::size_t i, std::span<const double> psd);
double weighted_rate_density(const FlatChannel &link, std::span<const double> weights, std::span<const double> psd);

/// Integrated rates; every piece must lie inside one sub-channel.
RateVector total_rates(const ChannelSpec &spec, const SpectrumAllocation &alloc);

/// Split sub-channels at the given frequencies, each strictly inside (0, 1).
ChannelSpec refine(const ChannelSpec &spec, std::span<const double> cut_points);

/// Split allocation pieces at the channel's sub-channel edges so that total_rates accepts them.
SpectrumAllocation align_to(const ChannelSpec &spec, const SpectrumAllocation &alloc);

} // namespace spectra
