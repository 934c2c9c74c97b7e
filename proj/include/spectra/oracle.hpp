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
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectra/channel_model.hpp"
#include "spectra/optimization_result.hpp"
#include "spectra/parallel.hpp"
#include "spectra/spectrum_optimizer.hpp"

namespace spectra
{

/// Finite-resolution search space: every sub-channel is cut into `splits` equal
/// sub-bands, each carrying a flat PSD from a per-user ladder of `levels` values
/// k * q_i / b_m, where q_i = box_factor * p_i / (levels - 1) is a power quantum.
struct OracleConfig
{
    std::size_t levels = 25;
    std::size_t splits = 2;
    double box_factor = 4.0;
    // Rejects searches whose transition count exceeds this.
    std::uint64_t cap = 100'000'000;
};

OracleConfig default_oracle(std::size_t users);

class OracleCapError : public std::runtime_error
{
public:
    OracleCapError(std::uint64_t work, std::uint64_t cap);
    std::uint64_t work;
};

struct OracleResult
{
    double value = 0.0;
    SpectrumAllocation allocation;
    // Lipschitz bound of R on the box times the PSD ladder spacing.
    double tolerance = 0.0;
    std::uint64_t work = 0;
};

/// Upper bound on DP transitions for this spec and config.
std::uint64_t oracle_work(const ChannelSpec &spec, const OracleConfig &config);
double oracle_tolerance(const ChannelSpec &spec, const OracleConfig &config);

/// Best weighted sum-rate over all budget-feasible allocations in the search space.
/// Solved exactly by dynamic programming over spent power quanta.
OracleResult exhaustive_best(const ChannelSpec &spec, const OracleConfig &config,
                             Execution exec = Execution::parallel);

/// Literal enumeration of the same space; only for tiny instances.
OracleResult enumerate_best(const ChannelSpec &spec, const OracleConfig &config);

struct GapSweep
{
    std::size_t rounds = 3;
    std::size_t golden_steps = 40;
};

struct GapCertificate
{
    // min over the sweep of g(lambda) minus the primal value.
    double gap = 0.0;
    double dual = 0.0;
    double primal = 0.0;
    std::vector<double> lambda;
};

GapCertificate duality_gap(const ChannelSpec &spec, const HullSet &hulls, const OptimizationResult &result,
                           const GapSweep &sweep = {});

struct PropertyCounts
{
    std::size_t strong_coupling = 10'000;
    std::size_t outsider = 10'000;
    std::size_t log_ratio = 1'000;
    std::size_t power_region = 50;
    std::size_t symmetric_split = 200;
    std::size_t envelope_shape = 200;
    std::size_t interference_convexity = 1'000;
    std::size_t coupling_boundary = 200;
};

struct PropertyResult
{
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    // Instance dump of the lowest-index failure, null when none.
    nlohmann::json counterexample;
};

struct PropertyReport
{
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;

    bool passed() const;
};

/// Randomized checks of the structural claims behind the solvers. Each instance draws
/// from its own generator seeded by (seed, property, index), so reports are reproducible
/// and independent of thread count.
PropertyReport property_suite(std::uint64_t seed, const PropertyCounts &counts = {},
                              Execution exec = Execution::parallel);

nlohmann::json to_json(const PropertyReport &report);

struct Check
{
    std::string name;
    bool passed = true;
    bool skipped = false;
    nlohmann::json detail;
};

/// End-to-end checks on one channel: solve over the envelopes, certify achievability,
/// budgets, sparsity and the duality gap, and compare with the oracle and, for a
/// symmetric two-user channel, with the closed-form solver.
std::vector<Check> spec_checks(const ChannelSpec &spec, const GridConfig &grid, const OracleConfig &oracle);

nlohmann::json to_json(const Check &check);

} // namespace spectra
