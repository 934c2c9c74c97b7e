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

#include <filesystem>
#include <json.hpp>
#include <string>

#include "spectra/channel_model.hpp"

namespace spectra
{

// Tolerance on the bandwidth sum accepted from JSON input; the sum is then rescaled to 1.
inline constexpr double kInputBandTolerance = 1e-9;

/// Parse a channel document. Both the normalized ("alpha"/"noise") and the raw
/// ("H2"/"sigma") sub-channel forms are accepted; raw input is normalized.
ChannelSpec parse_channel_spec(const nlohmann::json &doc);
ChannelSpec load_channel_spec(const std::filesystem::path &path);

nlohmann::json to_json(const ChannelSpec &spec);
nlohmann::json to_json(const SpectrumAllocation &alloc);

/// Shortest decimal text that parses back to the same double; used for CSV output.
std::string format_number(double value);

} // namespace spectra
