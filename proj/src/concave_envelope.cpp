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

#include "spectra/concave_envelope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <limits>
#include <set>

#include "spectra/linear_program.hpp"
#include "spectra/spec_io.hpp"

namespace spectra
{

namespace
{

using Ld = long double;
using MatL = Eigen::Matrix<Ld, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<Ld, Eigen::Dynamic, 1>;

// Far-side test for gift wrapping, in barycentric units.
constexpr Ld kFarSide = 1e-12L;
// Relative size of the generic height perturbation.
constexpr Ld kPerturbation = 1e-14L;
// Barycentric slack accepted when locating the facet containing a point.
constexpr double kInsideSlack = 1e-12;
constexpr double kDropWeight = 1e-12;

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string hex(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

// Points of one hull problem in normalized coordinates with perturbed heights.
struct Lifted
{
    std::size_t d = 0;
    std::vector<Ld> coords;
    std::vector<Ld> heights;

    struct Simplex
    {
        MatL inverse;
        VecL plane;
    };

    Simplex simplex(const std::vector<std::size_t> &v, std::size_t dims) const
    {
        const auto n = static_cast<Eigen::Index>(dims + 1);
        MatL M(n, n);
        VecL h(n);
        for (Eigen::Index r = 0; r < n; ++r)
        {
            M(r, 0) = 1.0L;
            for (Eigen::Index i = 0; i + 1 < n; ++i)
                M(r, i + 1) = coords[v[r] * d + i];
            h[r] = heights[v[r]];
        }
        Simplex s;
        s.inverse = M.fullPivLu().inverse();
        s.plane = s.inverse * h;
        return s;
    }
};

// Gift wrapping of the upper hull facets; returns sorted vertex tuples of every facet.
std::vector<std::vector<std::size_t>> wrap_facets(const Lifted &pts, const std::vector<std::size_t> &top_axis,
                                                  std::size_t cap, Execution exec)
{
    const std::size_t d = pts.d;
    const std::size_t n = pts.heights.size();

    // Initial facet: wrap up from the corner one axis at a time. The facet found on the
    // face spanned by the first j axes is a boundary ridge of the face spanned by j + 1.
    std::vector<std::size_t> start{0};
    for (std::size_t j = 1; j <= d; ++j)
    {
        std::vector<std::size_t> subset;
        std::vector<Ld> coords, heights;
        for (std::size_t k = 0; k < n; ++k)
            if (top_axis[k] < j)
            {
                subset.push_back(k);
                coords.insert(coords.end(), pts.coords.begin() + static_cast<std::ptrdiff_t>(k * d),
                              pts.coords.begin() + static_cast<std::ptrdiff_t>((k + 1) * d));
                heights.push_back(pts.heights[k]);
            }
        const auto face = pts.simplex(start, j - 1);
        std::vector<Ld> plane(d + 1, 0.0L), ridge(d + 1, 0.0L);
        for (std::size_t i = 0; i < j; ++i)
            plane[i] = face.plane[static_cast<Eigen::Index>(i)];
        ridge[j] = 1.0L;
        const auto next = kernels::wrap_scan(coords, heights, plane, ridge, kFarSide, exec);
        if (next.index >= subset.size())
            throw std::logic_error("hull start-up found no point off the box face");
        start.push_back(subset[next.index]);
    }
    std::sort(start.begin(), start.end());

    std::set<std::vector<std::size_t>> facets{start};
    std::set<std::vector<std::size_t>> ridges;
    std::deque<std::vector<std::size_t>> queue{start};
    while (!queue.empty())
    {
        const auto facet = std::move(queue.front());
        queue.pop_front();
        const auto s = pts.simplex(facet, d);
        std::vector<Ld> plane(s.plane.data(), s.plane.data() + d + 1);
        for (std::size_t j = 0; j <= d; ++j)
        {
            std::vector<std::size_t> ridge_key = facet;
            ridge_key.erase(ridge_key.begin() + static_cast<std::ptrdiff_t>(j));
            if (!ridges.insert(ridge_key).second)
                continue;
            std::vector<Ld> ridge(d + 1);
            for (std::size_t r = 0; r <= d; ++r)
                ridge[r] = -s.inverse(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
            const auto next = kernels::wrap_scan(pts.coords, pts.heights, plane, ridge, kFarSide, exec);
            if (next.index >= n)
                continue; // ridge on the box boundary
            auto neighbour = ridge_key;
            neighbour.insert(std::upper_bound(neighbour.begin(), neighbour.end(), next.index), next.index);
            if (facets.insert(neighbour).second)
            {
                if (facets.size() > cap)
                    throw std::runtime_error("hull exceeds the facet cap of " + std::to_string(cap) +
                                             "; use a coarser grid or the price-based path");
                queue.push_back(std::move(neighbour));
            }
        }
    }
    return {facets.begin(), facets.end()};
}

} // namespace

std::string GridConfig::key() const
{
    std::string k = "u";
    for (double u : upper)
        k += ":" + hex(u);
    k += "|p";
    for (auto p : points)
        k += ":" + std::to_string(p);
    k += "|" + hex(box_factor) + "|" + hex(log_mix) + "|" + (facets ? (*facets ? "f1" : "f0") : "fa");
    return k;
}

std::size_t default_points(std::size_t users)
{
    switch (users)
    {
    case 1:
        return 257;
    case 2:
        return 33;
    case 3:
        return 17;
    default:
        return 9;
    }
}

GridConfig default_grid(const ChannelSpec &spec, std::size_t points)
{
    GridConfig config;
    double narrowest = 1.0;
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
        narrowest = std::min(narrowest, spec.bandwidth(m));
    for (double p : spec.budgets())
        config.upper.push_back(config.box_factor * p / narrowest);
    config.points.assign(spec.users(), points ? points : default_points(spec.users()));
    return config;
}

GridConfig refined(const GridConfig &config)
{
    GridConfig out = config;
    for (auto &p : out.points)
        p = 2 * (p - 1) + 1;
    return out;
}

double CaratheodoryDecomposition::value() const
{
    double v = 0.0;
    for (const auto &t : terms)
        v += t.weight * t.value;
    return v;
}

std::vector<double> CaratheodoryDecomposition::point() const
{
    std::vector<double> p(terms.empty() ? 0 : terms.front().psd.size(), 0.0);
    for (const auto &t : terms)
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] += t.weight * t.psd[i];
    return p;
}

BoxError::BoxError(const std::string &what, std::vector<double> required_)
    : std::out_of_range(what), required(std::move(required_))
{
}

double weighted_sum_rate(const ChannelSpec &spec, std::size_t m, std::span<const double> psd)
{
    const auto r = rate_density(spec, m, psd);
    double total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        total += spec.weights()[i] * r[i];
    return total;
}

HullFunction build_hull(const ChannelSpec &spec, std::size_t m, const GridConfig &config, Execution exec)
{
    const std::size_t K = spec.users();
    if (m >= spec.subchannels())
        throw std::out_of_range("sub-channel index out of range");
    GridConfig cfg = config;
    if (cfg.upper.empty())
        cfg.upper = default_grid(spec).upper;
    if (cfg.points.empty())
        cfg.points.assign(K, default_points(K));
    if (cfg.upper.size() != K || cfg.points.size() != K)
        throw std::invalid_argument("grid config needs one entry per user");

    HullFunction hull;
    hull.subchannel_ = m;
    hull.link_ = spec.flat(m);
    hull.weights_ = spec.weights();

    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < K; ++i)
    {
        if (cfg.upper[i] > 0.0 && cfg.points[i] < 2)
            throw std::invalid_argument("grid needs at least 2 points per axis");
        axes.push_back(axis_breakpoints(cfg.upper[i], cfg.points[i], hull.link_.noise[i], cfg.log_mix));
        if (axes.back().size() > 1)
            hull.active_.push_back(i);
    }
    hull.grid_ = PowerGrid(std::move(axes));
    const auto &grid = hull.grid_;
    const std::size_t n = grid.size();

    hull.rates_.resize(n);
    kernels::evaluate_grid(hull.link_, hull.weights_, grid, hull.rates_, exec);

    // Axis-monotone extension; ties keep the realizer with less power.
    hull.extended_ = hull.rates_;
    hull.realizer_.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        hull.realizer_[k] = k;
    for (std::size_t i : hull.active_)
    {
        const std::size_t stride = grid.stride(i);
        const std::size_t len = grid.axis(i).size();
        for (std::size_t k = 0; k < n; ++k)
        {
            if ((k / stride) % len == 0)
                continue;
            const std::size_t below = k - stride;
            if (hull.extended_[below] >= hull.extended_[k])
            {
                hull.extended_[k] = hull.extended_[below];
                hull.realizer_[k] = hull.realizer_[below];
            }
        }
    }

    auto make_vertex = [&](std::size_t k) {
        return HullVertex{k, grid.point(k), grid.point(hull.realizer_[k]), hull.extended_[k]};
    };

    const std::size_t d = hull.active_.size();
    const bool want_facets = cfg.facets.value_or(K <= 3);
    if (d == 0)
    {
        hull.vertices_.push_back(make_vertex(0));
        hull.has_facets_ = true;
        return hull;
    }
    if (!want_facets)
    {
        for (std::size_t k = 0; k < n; ++k)
            hull.vertices_.push_back(make_vertex(k));
        return hull;
    }

    Lifted pts;
    pts.d = d;
    pts.coords.resize(n * d);
    pts.heights.resize(n);
    std::vector<std::size_t> top_axis(n, 0);
    Ld scale = 1.0L;
    for (double v : hull.extended_)
        scale = std::max(scale, 1.0L + std::abs(static_cast<Ld>(v)));
    for (std::size_t k = 0; k < n; ++k)
    {
        const auto multi = grid.multi_index(k);
        for (std::size_t a = 0; a < d; ++a)
        {
            const std::size_t i = hull.active_[a];
            pts.coords[k * d + a] = static_cast<Ld>(grid.axis(i)[multi[i]]) / static_cast<Ld>(grid.upper(i));
            if (multi[i] > 0)
                top_axis[k] = a;
        }
        const Ld rho = static_cast<Ld>(mix(k) >> 11) * 0x1p-53L;
        pts.heights[k] = static_cast<Ld>(hull.extended_[k]) + kPerturbation * scale * rho;
    }

    const auto tuples = wrap_facets(pts, top_axis, cfg.facet_cap, exec);

    std::vector<std::size_t> used;
    for (const auto &t : tuples)
        used.insert(used.end(), t.begin(), t.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto k : used)
        hull.vertices_.push_back(make_vertex(k));

    // Planes are refit on the unperturbed extended values.
    Lifted exact = pts;
    for (std::size_t k = 0; k < n; ++k)
        exact.heights[k] = static_cast<Ld>(hull.extended_[k]);
    const std::size_t w = d + 1;
    hull.barycentric_.reserve(tuples.size() * w * w);
    for (const auto &t : tuples)
    {
        const auto s = exact.simplex(t, d);
        Facet f;
        for (auto k : t)
            f.vertices.push_back(static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), k) - used.begin()));
        f.offset = static_cast<double>(s.plane[0]);
        f.normal.assign(K, 0.0);
        for (std::size_t a = 0; a < d; ++a)
        {
            const std::size_t i = hull.active_[a];
            f.normal[i] = static_cast<double>(s.plane[static_cast<Eigen::Index>(a + 1)] / static_cast<Ld>(grid.upper(i)));
        }
        for (std::size_t r = 0; r < w; ++r)
            for (std::size_t c = 0; c < w; ++c)
                hull.barycentric_.push_back(
                    static_cast<double>(s.inverse(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
        hull.facets_.push_back(std::move(f));
    }
    hull.has_facets_ = true;
    return hull;
}

EnvelopePoint HullFunction::point(std::size_t index) const { return {grid_.point(index), rates_.at(index)}; }

void HullFunction::check_box(std::span<const double> psd) const
{
    if (psd.size() != users())
        throw std::invalid_argument("PSD vector needs one entry per user");
    bool outside = false;
    std::vector<double> required(users());
    std::string detail;
    for (std::size_t i = 0; i < users(); ++i)
    {
        if (!(psd[i] >= 0.0) || !std::isfinite(psd[i]))
            throw std::invalid_argument("PSD must be finite and non-negative");
        const double u = grid_.upper(i);
        required[i] = std::max(u, psd[i]);
        if (psd[i] > u * (1.0 + 1e-12))
        {
            outside = true;
            detail += " P_" + std::to_string(i + 1) + "=" + std::to_string(psd[i]) + " > " + std::to_string(u);
        }
    }
    if (outside)
        throw BoxError("point outside hull box of sub-channel " + std::to_string(subchannel_) + ":" + detail,
                       std::move(required));
}

double HullFunction::lp_evaluate(std::span<const double> psd, CaratheodoryDecomposition *out) const
{
    const std::size_t d = active_.size();
    const auto cols = static_cast<Eigen::Index>(vertices_.size());
    LinearProgram lp;
    lp.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d + 1), cols);
    lp.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d + 1));
    lp.c.resize(cols);
    lp.sense.assign(d + 1, RowSense::equal);
    for (Eigen::Index k = 0; k < cols; ++k)
    {
        const auto &v = vertices_[static_cast<std::size_t>(k)];
        for (std::size_t a = 0; a < d; ++a)
            lp.A(static_cast<Eigen::Index>(a), k) = v.psd[active_[a]] / grid_.upper(active_[a]);
        lp.A(static_cast<Eigen::Index>(d), k) = 1.0;
        lp.c[k] = v.value;
    }
    for (std::size_t a = 0; a < d; ++a)
        lp.b[static_cast<Eigen::Index>(a)] = std::min(1.0, psd[active_[a]] / grid_.upper(active_[a]));
    lp.b[static_cast<Eigen::Index>(d)] = 1.0;
    const auto res = solve_lp(lp);
    if (res.status != LpStatus::optimal)
        throw std::runtime_error(std::string("hull evaluation LP failed: ") + to_string(res.status));
    if (out)
    {
        out->terms.clear();
        for (Eigen::Index k = 0; k < cols; ++k)
            if (res.x[k] > kDropWeight)
            {
                const auto &v = vertices_[static_cast<std::size_t>(k)];
                out->terms.push_back({res.x[k], static_cast<std::size_t>(k), v.psd, v.realizer, v.value});
            }
    }
    return res.value;
}

double HullFunction::evaluate(std::span<const double> psd) const
{
    check_box(psd);
    if (active_.empty())
        return extended_.front();
    if (!has_facets_)
        return lp_evaluate(psd, nullptr);
    double best = std::numeric_limits<double>::infinity();
    for (const auto &f : facets_)
    {
        double v = f.offset;
        for (std::size_t i : active_)
            v += f.normal[i] * psd[i];
        best = std::min(best, v);
    }
    return best;
}

CaratheodoryDecomposition HullFunction::decompose(std::span<const double> psd) const
{
    check_box(psd);
    CaratheodoryDecomposition out;
    if (active_.empty())
    {
        const auto &v = vertices_.front();
        out.terms.push_back({1.0, 0, v.psd, v.realizer, v.value});
        return out;
    }
    const std::size_t d = active_.size();
    const std::size_t w = d + 1;
    std::vector<double> x(w, 1.0), lambda(w), best_lambda;
    for (std::size_t a = 0; a < d; ++a)
        x[a + 1] = psd[active_[a]] / grid_.upper(active_[a]);

    std::size_t best = facets_.size();
    double best_min = -std::numeric_limits<double>::infinity();
    if (has_facets_)
    {
        for (std::size_t f = 0; f < facets_.size(); ++f)
        {
            const double *inv = barycentric_.data() + f * w * w;
            double lo = std::numeric_limits<double>::infinity();
            for (std::size_t v = 0; v < w; ++v)
            {
                double l = 0.0;
                for (std::size_t r = 0; r < w; ++r)
                    l += inv[r * w + v] * x[r];
                lambda[v] = l;
                lo = std::min(lo, l);
            }
            if (lo > best_min)
            {
                best_min = lo;
                best = f;
                best_lambda = lambda;
                if (lo >= -kInsideSlack)
                    break;
            }
        }
    }
    if (best == facets_.size() || best_min < -1e-9)
    {
        lp_evaluate(psd, &out);
    }
    else
    {
        double total = 0.0;
        for (std::size_t v = 0; v < w; ++v)
            if (best_lambda[v] > kDropWeight)
                total += best_lambda[v];
        for (std::size_t v = 0; v < w; ++v)
        {
            if (best_lambda[v] <= kDropWeight)
                continue;
            const std::size_t pos = facets_[best].vertices[v];
            const auto &vx = vertices_[pos];
            out.terms.push_back({best_lambda[v] / total, pos, vx.psd, vx.realizer, vx.value});
        }
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto &a, const auto &b) {
        return a.weight != b.weight ? a.weight > b.weight : a.vertex < b.vertex;
    });
    return out;
}

kernels::Argmax HullFunction::price_max(std::span<const double> lambda, Execution exec) const
{
    for (double l : lambda)
        if (!(l >= 0.0))
            throw std::invalid_argument("prices must be non-negative");
    return kernels::price_max(rates_, grid_, lambda, exec);
}

kernels::Argmax HullFunction::vertex_price_max(std::span<const double> lambda) const
{
    kernels::Argmax best;
    for (std::size_t k = 0; k < vertices_.size(); ++k)
    {
        double v = vertices_[k].value;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            v -= lambda[i] * vertices_[k].psd[i];
        if (v > best.value)
        {
            best.value = v;
            best.index = k;
        }
    }
    return best;
}

double HullFunction::interpolation_bound(std::span<const double> psd) const
{
    check_box(psd);
    const std::size_t K = users();
    std::vector<double> lo(K, 0.0);
    double diameter2 = 0.0;
    for (std::size_t i : active_)
    {
        const auto &ax = grid_.axis(i);
        auto it = std::upper_bound(ax.begin(), ax.end(), psd[i]);
        std::size_t k = it == ax.begin() ? 0 : static_cast<std::size_t>(it - ax.begin()) - 1;
        k = std::min(k, ax.size() - 2);
        lo[i] = ax[k];
        diameter2 += (ax[k + 1] - ax[k]) * (ax[k + 1] - ax[k]);
    }
    double curvature = 0.0;
    for (std::size_t i = 0; i < K; ++i)
    {
        if (weights_[i] == 0.0)
            continue;
        double cross2 = 0.0;
        const double interference = link_.interference(i, lo);
        for (std::size_t a = 0; a < K; ++a)
            if (a != i)
                cross2 += link_.cross_gain(a, i) * link_.cross_gain(a, i);
        const double total = interference + lo[i];
        curvature += weights_[i] * ((1.0 + cross2) / (total * total) + cross2 / (interference * interference));
    }
    return 0.5 * curvature * diameter2;
}

nlohmann::json to_json(const HullFunction &hull)
{
    nlohmann::json out;
    out["subchannel"] = hull.subchannel();
    out["users"] = hull.users();
    out["axes"] = hull.grid().axes();
    out["facets_materialized"] = hull.has_facets();
    auto &vs = out["vertices"] = nlohmann::json::array();
    for (const auto &v : hull.vertices())
        vs.push_back({{"index", v.index}, {"psd", v.psd}, {"realizer", v.realizer}, {"value", v.value}});
    auto &fs = out["facets"] = nlohmann::json::array();
    for (const auto &f : hull.facets())
        fs.push_back({{"vertices", f.vertices}, {"offset", f.offset}, {"normal", f.normal}});
    return out;
}

void write_hull_csv(std::ostream &out, const HullFunction &hull)
{
    const std::size_t K = hull.users();
    for (std::size_t i = 0; i < K; ++i)
        out << "P_" << i + 1 << ',';
    out << "R,R_star\n";
    std::vector<double> p(K);
    for (std::size_t k = 0; k < hull.grid().size(); ++k)
    {
        hull.grid().point(k, p);
        for (double v : p)
            out << format_number(v) << ',';
        out << format_number(hull.rates()[k]) << ',';
        // Without facets every evaluation is an LP; leave the column empty.
        if (hull.has_facets())
            out << format_number(hull.evaluate(p));
        out << '\n';
    }
}

} // namespace spectra
