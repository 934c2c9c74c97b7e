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

#include "spectra/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spectra
{

namespace
{

std::string at(std::size_t m, std::size_t i)
{
    return " (sub-channel " + std::to_string(m) + ", user " + std::to_string(i) + ")";
}

void check_finite_nonnegative(std::span<const double> values, const char *what)
{
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument(std::string(what) + " must be finite and non-negative");
}

} // namespace

double FlatChannel::interference(std::size_t i, std::span<const double> psd) const
{
    double total = noise[i];
    for (std::size_t j = 0; j < users; ++j)
        if (j != i)
            total += alpha[j * users + i] * psd[j];
    return total;
}

ChannelSpec::ChannelSpec(std::size_t users, std::vector<SubChannel> subchannels, std::vector<double> weights,
                         std::vector<double> budgets, double noise_floor)
    : users_(users), subchannels_(std::move(subchannels)), weights_(std::move(weights)),
      budgets_(std::move(budgets)), noise_floor_(noise_floor)
{
    if (users_ == 0)
        throw std::invalid_argument("channel needs at least one user");
    if (subchannels_.empty())
        throw std::invalid_argument("channel needs at least one sub-channel");
    if (!(noise_floor_ > 0.0) || !std::isfinite(noise_floor_))
        throw std::invalid_argument("noise floor must be positive");
    if (weights_.size() != users_ || budgets_.size() != users_)
        throw std::invalid_argument("weights and budgets need one entry per user");
    check_finite_nonnegative(weights_, "weights");
    check_finite_nonnegative(budgets_, "budgets");
    if (std::none_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; }))
        throw std::invalid_argument("at least one weight must be positive");

    double band = 0.0;
    for (std::size_t m = 0; m < subchannels_.size(); ++m)
    {
        auto &sc = subchannels_[m];
        if (!(sc.bandwidth > 0.0) || !std::isfinite(sc.bandwidth))
            throw std::invalid_argument("bandwidth of sub-channel " + std::to_string(m) + " must be positive");
        band += sc.bandwidth;
        auto &link = sc.link;
        if (link.users != users_ || link.alpha.size() != users_ * users_ || link.noise.size() != users_)
            throw std::invalid_argument("sub-channel " + std::to_string(m) + " has mismatched dimensions");
        for (std::size_t j = 0; j < users_; ++j)
        {
            link.alpha[j * users_ + j] = 0.0;
            for (std::size_t i = 0; i < users_; ++i)
            {
                double a = link.alpha[j * users_ + i];
                if (!std::isfinite(a) || a < 0.0)
                    throw std::invalid_argument("cross gain must be finite and non-negative" + at(m, i));
            }
        }
        for (std::size_t i = 0; i < users_; ++i)
            if (!std::isfinite(link.noise[i]) || link.noise[i] < noise_floor_)
                throw std::invalid_argument("noise below floor" + at(m, i));
    }
    if (std::abs(band - 1.0) > kBandSumTolerance)
        throw std::invalid_argument("bandwidths must sum to 1, got " + std::to_string(band));

    edges_.resize(subchannels_.size() + 1);
    edges_[0] = 0.0;
    for (std::size_t m = 0; m < subchannels_.size(); ++m)
        edges_[m + 1] = edges_[m] + subchannels_[m].bandwidth;
    edges_.back() = 1.0;
}

std::size_t ChannelSpec::locate(double f_start, double f_end) const
{
    auto it = std::upper_bound(edges_.begin(), edges_.end(), f_start + kFrequencyTolerance);
    std::size_t m = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
    m = std::min(m, subchannels_.size() - 1);
    if (f_start < edges_[m] - kFrequencyTolerance || f_end > edges_[m + 1] + kFrequencyTolerance)
        throw std::invalid_argument("piece [" + std::to_string(f_start) + ", " + std::to_string(f_end) +
                                    "] straddles a sub-channel edge; refine the allocation first");
    return m;
}

ChannelSpec ChannelSpec::with_budgets(std::vector<double> budgets) const
{
    return ChannelSpec(users_, subchannels_, weights_, std::move(budgets), noise_floor_);
}

ChannelSpec ChannelSpec::with_weights(std::vector<double> weights) const
{
    return ChannelSpec(users_, subchannels_, std::move(weights), budgets_, noise_floor_);
}

DirectGainError::DirectGainError(std::size_t user_, std::size_t subchannel_)
    : std::invalid_argument("direct gain must be positive" + at(subchannel_, user_)), user(user_),
      subchannel(subchannel_)
{
}

SpectrumAllocation::SpectrumAllocation(std::vector<BandPiece> pieces) : pieces_(std::move(pieces))
{
    if (pieces_.empty())
        throw std::invalid_argument("allocation needs at least one piece");
    const std::size_t k = pieces_.front().psd.size();
    if (k == 0)
        throw std::invalid_argument("allocation pieces need a PSD per user");
    double cursor = 0.0;
    for (const auto &p : pieces_)
    {
        if (p.psd.size() != k)
            throw std::invalid_argument("allocation pieces disagree on user count");
        if (std::abs(p.start - cursor) > kFrequencyTolerance)
            throw std::invalid_argument("allocation pieces must be contiguous from 0");
        if (!(p.end > p.start))
            throw std::invalid_argument("allocation piece must have positive width");
        check_finite_nonnegative(p.psd, "PSD");
        cursor = p.end;
    }
    if (std::abs(cursor - 1.0) > kFrequencyTolerance)
        throw std::invalid_argument("allocation pieces must end at 1");
}

SpectrumAllocation SpectrumAllocation::flat(std::vector<double> psd)
{
    return SpectrumAllocation({BandPiece{0.0, 1.0, std::move(psd)}});
}

std::vector<double> SpectrumAllocation::powers() const
{
    std::vector<double> out(users(), 0.0);
    for (const auto &p : pieces_)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += p.width() * p.psd[i];
    return out;
}

double RateVector::weighted(std::span<const double> weights) const
{
    double total = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i)
        total += weights[i] * rates[i];
    return total;
}

double RateVector::sum() const { return std::accumulate(rates.begin(), rates.end(), 0.0); }

ChannelSpec normalize(const RawChannelSpec &raw)
{
    const std::size_t k = raw.users;
    std::vector<SubChannel> out;
    out.reserve(raw.subchannels.size());
    for (std::size_t m = 0; m < raw.subchannels.size(); ++m)
    {
        const auto &sc = raw.subchannels[m];
        if (sc.gain.size() != k * k || sc.sigma.size() != k)
            throw std::invalid_argument("raw sub-channel " + std::to_string(m) + " has mismatched dimensions");
        SubChannel norm;
        norm.bandwidth = sc.bandwidth;
        norm.link.users = k;
        norm.link.alpha.assign(k * k, 0.0);
        norm.link.noise.resize(k);
        for (std::size_t i = 0; i < k; ++i)
        {
            const double direct = sc.gain[i * k + i];
            if (!(direct > 0.0) || !std::isfinite(direct))
                throw DirectGainError(i, m);
            if (!(sc.sigma[i] > 0.0))
                throw std::invalid_argument("noise PSD must be positive" + at(m, i));
            norm.link.noise[i] = sc.sigma[i] / direct;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i)
                    norm.link.alpha[j * k + i] = sc.gain[j * k + i] / direct;
        }
        out.push_back(std::move(norm));
    }
    return ChannelSpec(k, std::move(out), raw.weights, raw.budgets, raw.noise_floor);
}

double user_rate_density(const FlatChannel &link, std::size_t i, std::span<const double> psd)
{
    return std::log1p(psd[i] / link.interference(i, psd));
}

double weighted_rate_density(const FlatChannel &link, std::span<const double> weights, std::span<const double> psd)
{
    double total = 0.0;
    for (std::size_t i = 0; i < link.users; ++i)
        if (weights[i] != 0.0)
            total += weights[i] * user_rate_density(link, i, psd);
    return total;
}

std::vector<double> rate_density(const FlatChannel &link, std::span<const double> psd)
{
    if (psd.size() != link.users)
        throw std::invalid_argument("PSD vector needs one entry per user");
    check_finite_nonnegative(psd, "PSD");
    std::vector<double> r(link.users);
    for (std::size_t i = 0; i < link.users; ++i)
        r[i] = user_rate_density(link, i, psd);
    return r;
}

std::vector<double> rate_density(const ChannelSpec &spec, std::size_t m, std::span<const double> psd)
{
    return rate_density(spec.flat(m), psd);
}

RateVector total_rates(const ChannelSpec &spec, const SpectrumAllocation &alloc)
{
    if (alloc.users() != spec.users())
        throw std::invalid_argument("allocation and channel disagree on user count");
    RateVector out{std::vector<double>(spec.users(), 0.0)};
    for (const auto &piece : alloc.pieces())
    {
        const auto &link = spec.flat(spec.locate(piece.start, piece.end));
        for (std::size_t i = 0; i < spec.users(); ++i)
            out.rates[i] += piece.width() * user_rate_density(link, i, piece.psd);
    }
    return out;
}

ChannelSpec refine(const ChannelSpec &spec, std::span<const double> cut_points)
{
    std::vector<double> cuts(cut_points.begin(), cut_points.end());
    for (double c : cuts)
        if (!(c > 0.0 && c < 1.0))
            throw std::invalid_argument("cut point " + std::to_string(c) + " is outside (0, 1)");
    std::sort(cuts.begin(), cuts.end());

    const auto &edges = spec.edges();
    std::vector<SubChannel> out;
    auto cut = cuts.begin();
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        const auto &sc = spec.subchannel(m);
        double start = edges[m];
        double remaining = sc.bandwidth;
        while (cut != cuts.end() && *cut < edges[m + 1])
        {
            double left = *cut - start;
            ++cut;
            if (left <= kFrequencyTolerance || remaining - left <= kFrequencyTolerance)
                continue;
            out.push_back(SubChannel{left, sc.link});
            start += left;
            remaining -= left;
        }
        out.push_back(SubChannel{remaining, sc.link});
    }
    return ChannelSpec(spec.users(), std::move(out), spec.weights(), spec.budgets(), spec.noise_floor());
}

SpectrumAllocation align_to(const ChannelSpec &spec, const SpectrumAllocation &alloc)
{
    const auto &edges = spec.edges();
    std::vector<BandPiece> out;
    for (const auto &piece : alloc.pieces())
    {
        double start = piece.start;
        for (std::size_t e = 1; e + 1 < edges.size(); ++e)
        {
            if (edges[e] > start + kFrequencyTolerance && edges[e] < piece.end - kFrequencyTolerance)
            {
                out.push_back(BandPiece{start, edges[e], piece.psd});
                start = edges[e];
            }
        }
        out.push_back(BandPiece{start, piece.end, piece.psd});
    }
    return SpectrumAllocation(std::move(out));
}

} // namespace spectra
