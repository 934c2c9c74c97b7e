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

#include <iosfwd>
#include <string>
#include <vector>

namespace spectra::cli
{

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int
{
    kOk = 0,
    kInputError = 1,
    kVerificationFailed = 2
};

/// Run the command line `args` (without the program name). JSON documents go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace spectra::cli
