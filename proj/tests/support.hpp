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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spectra/channel_model.hpp"

namespace spectra::test
{

inline FlatChannel symmetric_link(double alpha, double noise = 1.0)
{
    return FlatChannel{2, {0.0, alpha, alpha, 0.0}, {noise, noise}};
}

inline ChannelSpec symmetric_flat(double alpha, double sum_power, double noise = 1.0)
{
    return ChannelSpec(2, {SubChannel{1.0, symmetric_link(alpha, noise)}}, {1.0, 1.0},
                       {0.5 * sum_power, 0.5 * sum_power});
}

inline double uniform(std::mt19937_64 &gen, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(gen);
}

inline double log_uniform(std::mt19937_64 &gen, double a, double b)
{
    return std::exp(uniform(gen, std::log(a), std::log(b)));
}

inline FlatChannel random_link(std::mt19937_64 &gen, std::size_t users, double alpha_max = 1.0)
{
    FlatChannel link;
    link.users = users;
    link.alpha.assign(users * users, 0.0);
    link.noise.resize(users);
    for (std::size_t j = 0; j < users; ++j)
        for (std::size_t i = 0; i < users; ++i)
            if (i != j)
                link.alpha[j * users + i] = uniform(gen, 0.0, alpha_max);
    for (auto &n : link.noise)
        n = log_uniform(gen, 0.1, 2.0);
    return link;
}

/// Random channel with the given sub-channel count; bandwidths are random and sum to 1.
inline ChannelSpec random_spec(std::mt19937_64 &gen, std::size_t users, std::size_t subchannels,
                               double alpha_max = 1.0, double budget_max = 10.0)
{
    std::vector<double> widths(subchannels);
    double total = 0.0;
    for (auto &w : widths)
        total += (w = uniform(gen, 0.5, 1.5));
    std::vector<SubChannel> subs;
    for (double w : widths)
        subs.push_back(SubChannel{w / total, random_link(gen, users, alpha_max)});
    std::vector<double> weights(users), budgets(users);
    for (auto &w : weights)
        w = uniform(gen, 0.5, 1.5);
    for (auto &b : budgets)
        b = uniform(gen, 0.5, budget_max);
    return ChannelSpec(users, std::move(subs), std::move(weights), std::move(budgets));
}

// Shannon rate of user i computed from the definition, independent of the library.
inline double shannon(const std::vector<double> &alpha, const std::vector<double> &noise, std::size_t users,
                      std::size_t i, const std::vector<double> &psd)
{
    double den = noise[i];
    for (std::size_t j = 0; j < users; ++j)
        if (j != i)
            den += alpha[j * users + i] * psd[j];
    return std::log(1.0 + psd[i] / den);
}

} // namespace spectra::test
