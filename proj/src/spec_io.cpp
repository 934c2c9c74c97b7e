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

#include "spectra/spec_io.hpp"

#include <charconv>

#include <cmath>
#include <fstream>
#include <string>

namespace spectra
{

namespace
{

std::vector<double> numbers(const nlohmann::json &node, const char *what)
{
    if (!node.is_array())
        throw std::invalid_argument(std::string("\"") + what + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto &v : node)
    {
        if (!v.is_number())
            throw std::invalid_argument(std::string("\"") + what + "\" must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// Row-major K x K matrix; row j holds the gains from transmitter j.
std::vector<double> matrix(const nlohmann::json &node, std::size_t k, const char *what)
{
    if (!node.is_array() || node.size() != k)
        throw std::invalid_argument(std::string("\"") + what + "\" must be a " + std::to_string(k) + "x" +
                                    std::to_string(k) + " matrix");
    std::vector<double> out;
    out.reserve(k * k);
    for (const auto &row : node)
    {
        auto values = numbers(row, what);
        if (values.size() != k)
            throw std::invalid_argument(std::string("\"") + what + "\" rows must have " + std::to_string(k) +
                                        " entries");
        out.insert(out.end(), values.begin(), values.end());
    }
    return out;
}

const nlohmann::json &field(const nlohmann::json &node, const char *name)
{
    auto it = node.find(name);
    if (it == node.end())
        throw std::invalid_argument(std::string("missing field \"") + name + "\"");
    return *it;
}

} // namespace

ChannelSpec parse_channel_spec(const nlohmann::json &doc)
{
    if (!doc.is_object())
        throw std::invalid_argument("channel document must be a JSON object");
    const auto &users_node = field(doc, "users");
    if (!users_node.is_number_integer() || users_node.get<long long>() < 1)
        throw std::invalid_argument("\"users\" must be a positive integer");
    const auto k = users_node.get<std::size_t>();

    auto weights = numbers(field(doc, "weights"), "weights");
    auto budgets = numbers(field(doc, "budgets"), "budgets");
    if (weights.size() != k || budgets.size() != k)
        throw std::invalid_argument("\"weights\" and \"budgets\" need one entry per user");
    const double floor = doc.value("noise_floor", kDefaultNoiseFloor);

    const auto &subs = field(doc, "subchannels");
    if (!subs.is_array() || subs.empty())
        throw std::invalid_argument("\"subchannels\" must be a non-empty array");

    double band = 0.0;
    for (const auto &sc : subs)
        band += field(sc, "bandwidth").get<double>();
    if (!(std::abs(band - 1.0) <= kInputBandTolerance))
        throw std::invalid_argument("bandwidths must sum to 1 (got " + std::to_string(band) + ")");

    const bool raw = subs.front().contains("H2");
    if (raw)
    {
        RawChannelSpec spec{k, {}, std::move(weights), std::move(budgets), floor};
        for (const auto &sc : subs)
            spec.subchannels.push_back(RawSubChannel{field(sc, "bandwidth").get<double>() / band,
                                                     matrix(field(sc, "H2"), k, "H2"),
                                                     numbers(field(sc, "sigma"), "sigma")});
        return normalize(spec);
    }

    std::vector<SubChannel> out;
    for (const auto &sc : subs)
    {
        SubChannel s;
        s.bandwidth = field(sc, "bandwidth").get<double>() / band;
        s.link.users = k;
        s.link.alpha = matrix(field(sc, "alpha"), k, "alpha");
        s.link.noise = numbers(field(sc, "noise"), "noise");
        out.push_back(std::move(s));
    }
    return ChannelSpec(k, std::move(out), std::move(weights), std::move(budgets), floor);
}

ChannelSpec load_channel_spec(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open channel spec " + path.string());
    nlohmann::json doc;
    try
    {
        in >> doc;
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
    }
    try
    {
        return parse_channel_spec(doc);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument("bad channel spec " + path.string() + ": " + e.what());
    }
}

nlohmann::json to_json(const ChannelSpec &spec)
{
    const std::size_t k = spec.users();
    nlohmann::json subs = nlohmann::json::array();
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        nlohmann::json alpha = nlohmann::json::array();
        for (std::size_t j = 0; j < k; ++j)
        {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t i = 0; i < k; ++i)
                row.push_back(spec.alpha(m, j, i));
            alpha.push_back(std::move(row));
        }
        subs.push_back({{"bandwidth", spec.bandwidth(m)}, {"alpha", std::move(alpha)}, {"noise", spec.flat(m).noise}});
    }
    return {{"users", k},
            {"subchannels", std::move(subs)},
            {"weights", spec.weights()},
            {"budgets", spec.budgets()},
            {"noise_floor", spec.noise_floor()}};
}

nlohmann::json to_json(const SpectrumAllocation &alloc)
{
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto &p : alloc.pieces())
        pieces.push_back({{"start", p.start}, {"end", p.end}, {"psd", p.psd}});
    return pieces;
}

std::string format_number(double value)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, r.ptr);
}

} // namespace spectra
