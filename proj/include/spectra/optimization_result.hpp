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
#include <string>
#include <vector>

#include "spectra/channel_model.hpp"

namespace spectra
{

struct SolverDiagnostics
{
    std::size_t iterations = 0;
    double primal_residual = 0.0;
    // sum_i lambda_i * (budget_i - power_i)
    double slackness_residual = 0.0;
    bool degenerate_optimum = false;
    std::vector<std::string> notes;
};

struct OptimizationResult
{
    double value = 0.0;
    SpectrumAllocation allocation;
    std::vector<double> rates;
    std::vector<double> power;
    // Prices on the per-user power constraints, nats per unit power.
    std::vector<double> prices;
    double duality_gap = 0.0;
    SolverDiagnostics diagnostics;
};

} // namespace spectra
