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

#include <stdexcept>
#include <vector>

#include "spectra/channel_model.hpp"
#include "spectra/optimization_result.hpp"

namespace spectra
{

// Two-user symmetric band, noise normalized to 1, cross gain alpha on both links.

/// Best flat-sharing sum-rate under sum power p: 2 ln(1 + (p/2) / (1 + alpha p / 2)).
/// The closed form is the sharing optimum only for p <= crossover_power(alpha).
double f_star(double alpha, double p);
bool f_star_formula_applies(double alpha, double p);
double f_star_slope(double alpha, double p);

/// Best FDMA sum-rate under sum power p: ln(1 + p).
double h_star(double p);
double h_star_slope(double p);

/// Power where f_star and h_star cross.
double crossover_power(double alpha);

/// Left side minus right side of the tangency condition for the sharing-side touch point.
double tangency_residual(double alpha, double p_f);

/// Closed-form FDMA-side touch point for a given sharing-side touch point.
double fdma_touch_point(double alpha, double p_f);

struct TangencySolution
{
    double alpha = 0.0;
    double p_f = 0.0;
    double p_h = 0.0;
    double p_0 = 0.0;
    double slope = 0.0;
    double residual = 0.0;
    // Every sign change found by the panel scan, ascending.
    std::vector<double> roots;
};

class TangencyError : public std::runtime_error
{
public:
    TangencyError(const std::string &what, double lo, double hi, double residual_lo, double residual_hi);
    double lo, hi, residual_lo, residual_hi;
};

/// Common tangent of f_star and h_star for 0 < alpha < 1/2.
TangencySolution solve_tangency(double alpha);

enum class Regime
{
    sharing,
    mixture,
    fdma
};

const char *to_string(Regime regime);

struct EnvelopeValue
{
    double value = 0.0;
    Regime regime = Regime::sharing;
    // Fraction of the band run as FDMA.
    double lambda = 0.0;
};

/// Concave envelope r*(p) of max(f_star, h_star). alpha >= 1/2 gives h_star; alpha == 0 gives f_star.
EnvelopeValue r_star_flat(double alpha, double p);
EnvelopeValue r_star_flat(const TangencySolution &t, double p);
double r_star_slope(double alpha, double p);

/// Allocation on the unit band achieving r_star_flat(alpha, p): a sharing piece at
/// (p_f/2, p_f/2) of width 1 - lambda, then FDMA halves of the rest at PSD p_h.
SpectrumAllocation build_allocation_flat(double alpha, double p);

/// Sum-rate maximization over a two-user symmetric piecewise-flat channel with a
/// sum-power budget; each user ends up with exactly half of it.
OptimizationResult solve_symmetric_selective(const ChannelSpec &spec, double sum_power);

} // namespace spectra
