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

#include <doctest.h>

#include <cmath>

#include "spectra/spec_io.hpp"

using namespace spectra;
using doctest::Approx;
using nlohmann::json;

namespace
{

json two_user_doc()
{
    return json::parse(R"({
      "users": 2, "weights": [1, 2], "budgets": [3, 4],
      "subchannels": [
        {"bandwidth": 0.25, "alpha": [[0, 0.3], [0.6, 0]], "noise": [1, 2]},
        {"bandwidth": 0.75, "alpha": [[0, 0.1], [0.2, 0]], "noise": [0.5, 0.5]}
      ]})");
}

} // namespace

TEST_CASE("alpha rows are the interfering transmitter")
{
    const auto spec = parse_channel_spec(two_user_doc());
    CHECK(spec.alpha(0, 0, 1) == 0.3);
    CHECK(spec.alpha(0, 1, 0) == 0.6);
    CHECK(spec.noise(1, 1) == 0.5);
    CHECK(spec.edges()[1] == 0.25);
}

TEST_CASE("round trip through JSON")
{
    const auto spec = parse_channel_spec(two_user_doc());
    const auto again = parse_channel_spec(json::parse(to_json(spec).dump()));
    CHECK(to_json(again) == to_json(spec));
}

TEST_CASE("raw gains are normalized")
{
    const auto doc = json::parse(R"({
      "users": 2, "weights": [1, 1], "budgets": [1, 1],
      "subchannels": [{"bandwidth": 1, "H2": [[2, 0.7], [0.5, 1]], "sigma": [0.02, 0.3]}]})");
    const auto spec = parse_channel_spec(doc);
    CHECK(spec.alpha(0, 1, 0) == Approx(0.25));
    CHECK(spec.noise(0, 0) == Approx(0.01));
}

TEST_CASE("bandwidths within input tolerance are rescaled to sum to one")
{
    auto doc = two_user_doc();
    doc["subchannels"][1]["bandwidth"] = 0.75 + 5e-10;
    const auto spec = parse_channel_spec(doc);
    CHECK(spec.bandwidth(0) + spec.bandwidth(1) == Approx(1.0).epsilon(1e-15));
    doc["subchannels"][1]["bandwidth"] = 0.76;
    CHECK_THROWS_AS(parse_channel_spec(doc), std::invalid_argument);
}

TEST_CASE("malformed documents are rejected")
{
    auto doc = two_user_doc();
    doc.erase("budgets");
    CHECK_THROWS_AS(parse_channel_spec(doc), std::invalid_argument);
    doc = two_user_doc();
    doc["subchannels"][0]["alpha"] = json::parse("[[0, 1, 2], [1, 0, 2]]");
    CHECK_THROWS_AS(parse_channel_spec(doc), std::invalid_argument);
    doc = two_user_doc();
    doc["users"] = 0;
    CHECK_THROWS_AS(parse_channel_spec(doc), std::invalid_argument);
    CHECK_THROWS_AS(load_channel_spec("definitely/missing.json"), std::runtime_error);
}

TEST_CASE("format_number round trips")
{
    for (double v : {0.1, 1.0 / 3.0, 54.930986174458908, 1e-300, 0.0, 123456789.125})
        CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(0.1) == "0.1");
}
