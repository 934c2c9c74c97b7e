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

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace spectra
{

enum class RowSense
{
    less_equal,
    equal
};

/// max c^T x  subject to  A x (<= or =) b,  x >= 0,  with b >= 0.
struct LinearProgram
{
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<RowSense> sense;
};

enum class LpStatus
{
    optimal,
    infeasible,
    unbounded,
    iteration_limit
};

const char *to_string(LpStatus status);

struct LpOptions
{
    double tolerance = 1e-9;
    // 0 selects 50 * (rows + columns).
    std::size_t max_iterations = 0;
    // Degenerate pivots in a row before pricing switches to Bland's rule.
    std::size_t degenerate_limit = 50;
};

struct LpResult
{
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
    // Row duals; non-negative on <= rows at an optimum.
    Eigen::VectorXd y;
    // Basic column per row; indices >= A.cols() are slacks or artificials.
    std::vector<std::size_t> basis;
    std::size_t iterations = 0;
    // Some nonbasic column prices out at zero, so the optimum may not be unique.
    bool degenerate_optimum = false;
};

/// Two-phase revised simplex. Dantzig pricing with lowest-index ties, falling back to
/// Bland's rule after a run of degenerate pivots; ratio-test ties go to the smallest
/// basic variable index. Fully deterministic.
LpResult solve_lp(const LinearProgram &lp, const LpOptions &options = {});

} // namespace spectra
