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
#include <json.hpp>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectra/channel_model.hpp"
#include "spectra/kernels.hpp"
#include "spectra/parallel.hpp"
#include "spectra/power_grid.hpp"

namespace spectra
{

struct GridConfig
{
    // Box [0, upper_i] per user; empty derives it from the budgets.
    std::vector<double> upper;
    // Breakpoints per user axis; empty uses default_points(K).
    std::vector<std::size_t> points;
    // upper_i = box_factor * p_i / min_m b_m when derived.
    double box_factor = 4.0;
    // Weight of the linear part of the axis spacing; 1 gives a uniform grid.
    double log_mix = 0.5;
    // Materialize facets; unset means only for K <= 3.
    std::optional<bool> facets;
    std::size_t facet_cap = 2'000'000;

    std::string key() const;
};

std::size_t default_points(std::size_t users);

/// Config with the box and point counts filled in for this spec. `points` overrides every axis.
GridConfig default_grid(const ChannelSpec &spec, std::size_t points = 0);

/// Same box, (points - 1) doubled on every axis; the old grid is a subset of the new one.
GridConfig refined(const GridConfig &config);

struct EnvelopePoint
{
    std::vector<double> psd;
    double value = 0.0;
};

struct HullVertex
{
    // Flat index into the grid.
    std::size_t index = 0;
    std::vector<double> psd;
    // Grid point below psd that attains the monotone-extended value with the raw rate.
    std::vector<double> realizer;
    double value = 0.0;
};

struct Facet
{
    // Positions in HullFunction::vertices(), ascending.
    std::vector<std::size_t> vertices;
    double offset = 0.0;
    std::vector<double> normal;
};

struct DecompositionTerm
{
    double weight = 0.0;
    std::size_t vertex = 0;
    std::vector<double> psd;
    std::vector<double> realizer;
    double value = 0.0;
};

/// At most K + 1 hull vertices whose weighted average is the query point.
struct CaratheodoryDecomposition
{
    std::vector<DecompositionTerm> terms;

    double value() const;
    std::vector<double> point() const;
};

/// A query outside the hull's box; `required` is the box that would contain it.
class BoxError : public std::out_of_range
{
public:
    BoxError(const std::string &what, std::vector<double> required);
    std::vector<double> required;
};

/// Upper concave envelope of one sub-channel's weighted sum-rate over a PSD grid.
/// Immutable after construction.
class HullFunction
{
public:
    std::size_t subchannel() const { return subchannel_; }
    std::size_t users() const { return grid_.dims(); }
    const PowerGrid &grid() const { return grid_; }
    const FlatChannel &link() const { return link_; }
    const std::vector<double> &weights() const { return weights_; }

    // Raw weighted sum-rate and its axis-monotone extension at every grid point.
    const std::vector<double> &rates() const { return rates_; }
    const std::vector<double> &extended() const { return extended_; }
    std::size_t realizer(std::size_t index) const { return realizer_[index]; }

    const std::vector<HullVertex> &vertices() const { return vertices_; }
    const std::vector<Facet> &facets() const { return facets_; }
    bool has_facets() const { return has_facets_; }

    EnvelopePoint point(std::size_t index) const;

    double evaluate(std::span<const double> psd) const;
    CaratheodoryDecomposition decompose(std::span<const double> psd) const;

    /// max over raw grid points of R(P) - lambda . P.
    kernels::Argmax price_max(std::span<const double> lambda, Execution exec = Execution::parallel) const;
    /// Same over hull vertices with the extended values.
    kernels::Argmax vertex_price_max(std::span<const double> lambda) const;

    /// Bound on how far the grid hull can sit below the continuous envelope when the
    /// continuous optimum uses a support point in the grid cell containing psd:
    /// half the local Hessian bound times the squared cell diameter.
    double interpolation_bound(std::span<const double> psd) const;

private:
    friend HullFunction build_hull(const ChannelSpec &, std::size_t, const GridConfig &, Execution);

    void check_box(std::span<const double> psd) const;
    double lp_evaluate(std::span<const double> psd, CaratheodoryDecomposition *out) const;

    std::size_t subchannel_ = 0;
    FlatChannel link_;
    std::vector<double> weights_;
    PowerGrid grid_;
    std::vector<double> rates_;
    std::vector<double> extended_;
    std::vector<std::size_t> realizer_;
    std::vector<HullVertex> vertices_;
    std::vector<Facet> facets_;
    // Per facet, (d+1)^2 entries mapping (1, active coords / upper) to barycentric weights.
    std::vector<double> barycentric_;
    std::vector<std::size_t> active_;
    bool has_facets_ = false;
};

double weighted_sum_rate(const ChannelSpec &spec, std::size_t m, std::span<const double> psd);

HullFunction build_hull(const ChannelSpec &spec, std::size_t m, const GridConfig &config,
                        Execution exec = Execution::parallel);

/// Facet dump for debugging.
nlohmann::json to_json(const HullFunction &hull);

/// Rows of (P_1..P_K, R, R*) for every grid point, one header line.
void write_hull_csv(std::ostream &out, const HullFunction &hull);

} // namespace spectra
