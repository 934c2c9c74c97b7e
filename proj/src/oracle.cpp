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

#include "spectra/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "spectra/fdma_analysis.hpp"
#include "spectra/kernels.hpp"
#include "spectra/symmetric_two_user.hpp"

namespace spectra
{

namespace
{

struct Ladder
{
    std::vector<std::size_t> levels;
    std::vector<std::size_t> units;
    std::vector<double> quantum;
    std::size_t states = 1;
    std::size_t tuples = 1;
};

Ladder make_ladder(const ChannelSpec &spec, const OracleConfig &cfg)
{
    if (cfg.levels < 2)
        throw std::invalid_argument("oracle needs at least 2 PSD levels");
    if (cfg.splits < 1)
        throw std::invalid_argument("oracle needs at least 1 split per sub-channel");
    if (!(cfg.box_factor > 0.0))
        throw std::invalid_argument("oracle box factor must be positive");
    Ladder l;
    const double steps = static_cast<double>(cfg.levels - 1);
    for (double p : spec.budgets())
    {
        if (p > 0.0)
        {
            l.levels.push_back(cfg.levels);
            l.quantum.push_back(cfg.box_factor * p / steps);
            l.units.push_back(
                static_cast<std::size_t>(std::floor(static_cast<double>(cfg.splits) * steps / cfg.box_factor + 1e-9)));
        }
        else
        {
            l.levels.push_back(1);
            l.quantum.push_back(0.0);
            l.units.push_back(0);
        }
        l.states *= l.units.back() + 1;
        l.tuples *= l.levels.back();
    }
    return l;
}

PowerGrid level_grid(const Ladder &l, double bandwidth)
{
    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < l.levels.size(); ++i)
    {
        std::vector<double> ax(l.levels[i]);
        for (std::size_t k = 0; k < ax.size(); ++k)
            ax[k] = static_cast<double>(k) * l.quantum[i] / bandwidth;
        axes.push_back(std::move(ax));
    }
    return PowerGrid(std::move(axes));
}

std::vector<std::vector<double>> stage_gains(const ChannelSpec &spec, const Ladder &l, std::size_t splits,
                                             Execution exec)
{
    std::vector<std::vector<double>> gains(spec.subchannels());
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        const auto grid = level_grid(l, spec.bandwidth(m));
        gains[m].resize(grid.size());
        kernels::evaluate_grid(spec.flat(m), spec.weights(), grid, gains[m], exec);
        for (auto &g : gains[m])
            g *= spec.bandwidth(m) / static_cast<double>(splits);
    }
    return gains;
}

SpectrumAllocation layout(const ChannelSpec &spec, const Ladder &l, std::size_t splits,
                          const std::vector<std::size_t> &choices)
{
    const auto &edges = spec.edges();
    std::vector<BandPiece> pieces;
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        const auto grid = level_grid(l, spec.bandwidth(m));
        const double width = spec.bandwidth(m) / static_cast<double>(splits);
        for (std::size_t s = 0; s < splits; ++s)
        {
            const double start = pieces.empty() ? 0.0 : pieces.back().end;
            const double end = s + 1 == splits ? edges[m + 1] : edges[m] + width * static_cast<double>(s + 1);
            pieces.push_back(BandPiece{start, end, grid.point(choices[m * splits + s])});
        }
    }
    return SpectrumAllocation(std::move(pieces));
}

double lipschitz(const ChannelSpec &spec, std::size_t i)
{
    double best = 0.0;
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
    {
        double v = spec.weights()[i] / spec.noise(m, i);
        for (std::size_t j = 0; j < spec.users(); ++j)
            if (j != i)
                v += spec.weights()[j] * spec.alpha(m, i, j) / spec.noise(m, j);
        best = std::max(best, v);
    }
    return best;
}

} // namespace

OracleConfig default_oracle(std::size_t users)
{
    OracleConfig cfg;
    cfg.levels = users <= 2 ? 25 : 9;
    cfg.splits = 2;
    return cfg;
}

OracleCapError::OracleCapError(std::uint64_t work_, std::uint64_t cap)
    : std::runtime_error("oracle search needs about " + std::to_string(work_) + " transitions, cap is " +
                         std::to_string(cap)),
      work(work_)
{
}

std::uint64_t oracle_work(const ChannelSpec &spec, const OracleConfig &config)
{
    const auto l = make_ladder(spec, config);
    const double w = static_cast<double>(spec.subchannels() * config.splits) * static_cast<double>(l.states) *
                     static_cast<double>(l.tuples);
    return w > 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(w);
}

double oracle_tolerance(const ChannelSpec &spec, const OracleConfig &config)
{
    // Rounding every sub-band PSD down to the ladder loses at most width * Lip * q_i / b_m
    // per user and sub-band, which sums to M * Lip * q_i.
    const auto l = make_ladder(spec, config);
    double tol = 0.0;
    for (std::size_t i = 0; i < spec.users(); ++i)
        tol += lipschitz(spec, i) * l.quantum[i];
    return tol * static_cast<double>(spec.subchannels());
}

OracleResult exhaustive_best(const ChannelSpec &spec, const OracleConfig &config, Execution exec)
{
    const auto l = make_ladder(spec, config);
    const auto work = oracle_work(spec, config);
    if (work > config.cap)
        throw OracleCapError(work, config.cap);

    const auto gains = stage_gains(spec, l, config.splits, exec);
    const kernels::StageShape shape{l.units, l.levels};
    const std::size_t stages = spec.subchannels() * config.splits;

    std::vector<double> prev(l.states, -std::numeric_limits<double>::infinity()), next(l.states);
    prev[0] = 0.0;
    std::vector<std::vector<std::size_t>> choice(stages, std::vector<std::size_t>(l.states));
    for (std::size_t s = 0; s < stages; ++s)
    {
        kernels::dp_stage(shape, prev, gains[s / config.splits], next, choice[s], exec);
        std::swap(prev, next);
    }

    std::size_t u = 0;
    for (std::size_t k = 1; k < l.states; ++k)
        if (prev[k] > prev[u])
            u = k;
    const double value = prev[u];

    const std::size_t K = spec.users();
    std::vector<std::size_t> ustride(K, 1), kstride(K, 1);
    for (std::size_t i = K - 1; i-- > 0;)
    {
        ustride[i] = ustride[i + 1] * (l.units[i + 1] + 1);
        kstride[i] = kstride[i + 1] * l.levels[i + 1];
    }
    std::vector<std::size_t> picks(stages);
    for (std::size_t s = stages; s-- > 0;)
    {
        const std::size_t k = choice[s][u];
        picks[s] = k;
        std::size_t rest = k;
        for (std::size_t i = 0; i < K; ++i)
        {
            u -= (rest / kstride[i]) * ustride[i];
            rest %= kstride[i];
        }
    }
    return OracleResult{value, layout(spec, l, config.splits, picks), oracle_tolerance(spec, config), work};
}

OracleResult enumerate_best(const ChannelSpec &spec, const OracleConfig &config)
{
    const auto l = make_ladder(spec, config);
    const std::size_t stages = spec.subchannels() * config.splits;
    const double combos = std::pow(static_cast<double>(l.tuples), static_cast<double>(stages));
    if (combos > 1e7)
        throw OracleCapError(static_cast<std::uint64_t>(combos), 10'000'000);
    const auto gains = stage_gains(spec, l, config.splits, Execution::serial);
    const std::size_t K = spec.users();
    std::vector<std::size_t> kstride(K, 1);
    for (std::size_t i = K - 1; i-- > 0;)
        kstride[i] = kstride[i + 1] * l.levels[i + 1];

    std::vector<std::size_t> pick(stages, 0), best_pick;
    double best = -std::numeric_limits<double>::infinity();
    while (true)
    {
        std::vector<std::size_t> used(K, 0);
        double v = 0.0;
        for (std::size_t s = 0; s < stages; ++s)
        {
            std::size_t rest = pick[s];
            for (std::size_t i = 0; i < K; ++i)
            {
                used[i] += rest / kstride[i];
                rest %= kstride[i];
            }
            v += gains[s / config.splits][pick[s]];
        }
        bool feasible = true;
        for (std::size_t i = 0; i < K; ++i)
            feasible = feasible && used[i] <= l.units[i];
        if (feasible && v > best)
        {
            best = v;
            best_pick = pick;
        }
        std::size_t s = stages;
        while (s-- > 0)
        {
            if (++pick[s] < l.tuples)
                break;
            pick[s] = 0;
        }
        if (s == static_cast<std::size_t>(-1))
            break;
    }
    const auto work = static_cast<std::uint64_t>(combos);
    return OracleResult{best, layout(spec, l, config.splits, best_pick), oracle_tolerance(spec, config), work};
}

GapCertificate duality_gap(const ChannelSpec &spec, const HullSet &hulls, const OptimizationResult &result,
                           const GapSweep &sweep)
{
    GapCertificate out;
    out.primal = result.value;
    out.lambda = result.prices;
    auto g = [&](const std::vector<double> &lambda) { return dual_value(spec, hulls, lambda).value; };
    out.dual = g(out.lambda);

    constexpr double inv_phi = 0.6180339887498949;
    for (std::size_t round = 0; round < sweep.rounds; ++round)
    {
        for (std::size_t i = 0; i < spec.users(); ++i)
        {
            if (spec.budgets()[i] == 0.0)
                continue;
            // Beyond the Lipschitz constant of R in P_i the user buys nothing and g is linear.
            double lo = 0.0, hi = std::max(2.0 * out.lambda[i], lipschitz(spec, i));
            auto at = [&](double t) {
                auto l = out.lambda;
                l[i] = t;
                const double v = g(l);
                if (v < out.dual)
                {
                    out.dual = v;
                    out.lambda = l;
                }
                return v;
            };
            at(lo);
            at(hi);
            double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
            double fa = at(a), fb = at(b);
            for (std::size_t s = 0; s < sweep.golden_steps; ++s)
            {
                if (fa <= fb)
                {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - inv_phi * (hi - lo);
                    fa = at(a);
                }
                else
                {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + inv_phi * (hi - lo);
                    fb = at(b);
                }
            }
        }
    }
    out.gap = out.dual - out.primal;
    return out;
}

// ---------------------------------------------------------------------------------------
// Property suite

namespace
{

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Draw
{
public:
    Draw(std::uint64_t seed, std::uint64_t property, std::uint64_t index)
        : gen_(splitmix(seed ^ splitmix(property ^ splitmix(index))))
    {
    }

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    bool chance(double p) { return unit() < p; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

private:
    std::mt19937_64 gen_;
};

double slack(double reference) { return 1e-12 * std::max(1.0, std::abs(reference)); }

nlohmann::json link_json(const FlatChannel &link)
{
    return {{"users", link.users}, {"alpha", link.alpha}, {"noise", link.noise}};
}

using Outcome = std::optional<nlohmann::json>;

template <class Fn>
PropertyResult run_property(const char *name, std::uint64_t id, std::size_t count, std::uint64_t seed,
                            Execution exec, Fn fn)
{
    std::vector<Outcome> outcomes(count);
    auto one = [&](std::size_t k) {
        Draw draw(seed, id, k);
        try
        {
            outcomes[k] = fn(k, draw);
        }
        catch (const std::exception &e)
        {
            outcomes[k] = nlohmann::json{{"error", e.what()}};
        }
    };
    if (exec == Execution::serial)
    {
        for (std::size_t k = 0; k < count; ++k)
            one(k);
    }
    else
    {
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (std::ptrdiff_t k = 0; k < n; ++k)
            one(static_cast<std::size_t>(k));
    }
    PropertyResult r;
    r.name = name;
    r.checked = count;
    for (std::size_t k = 0; k < count; ++k)
    {
        if (!outcomes[k])
            continue;
        if (r.failed++ == 0)
        {
            r.counterexample = *outcomes[k];
            r.counterexample["index"] = k;
        }
    }
    return r;
}

FlatChannel random_link(Draw &d, std::size_t users, double alpha_lo, bool allow_exact_floor)
{
    FlatChannel link;
    link.users = users;
    link.alpha.assign(users * users, 0.0);
    link.noise.resize(users);
    for (std::size_t j = 0; j < users; ++j)
        for (std::size_t i = 0; i < users; ++i)
            if (i != j)
            {
                const bool at_floor = allow_exact_floor && d.chance(0.1);
                link.alpha[j * users + i] = at_floor ? alpha_lo : alpha_lo + d.log_uniform(1e-4, 20.0);
            }
    for (auto &n : link.noise)
        n = d.log_uniform(1e-3, 1e2);
    return link;
}

std::vector<double> random_psd(Draw &d, std::size_t users)
{
    std::vector<double> p(users);
    bool any = false;
    for (auto &v : p)
    {
        v = d.chance(0.15) ? 0.0 : d.log_uniform(1e-3, 1e4);
        any = any || v > 0.0;
    }
    if (!any)
        p[d.below(users)] = 1.0;
    return p;
}

Outcome strong_coupling(std::size_t k, Draw &d)
{
    const std::size_t users = 2 + k % 3;
    const auto link = random_link(d, users, kStrongCoupling, true);
    const auto psd = random_psd(d, users);
    std::vector<std::size_t> group(users);
    for (std::size_t i = 0; i < users; ++i)
        group[i] = i;
    const auto r = reallocation_gain(link, psd, group);
    for (std::size_t i = 0; i < users; ++i)
        if (r.rates_after[i] < r.rates_before[i] - slack(r.rates_before[i]))
            return nlohmann::json{{"link", link_json(link)},     {"psd", psd},   {"user", i},
                                  {"before", r.rates_before[i]}, {"after", r.rates_after[i]}};
    return std::nullopt;
}

Outcome outsider(std::size_t, Draw &d)
{
    FlatChannel link;
    link.users = 3;
    link.alpha.assign(9, 0.0);
    link.noise.resize(3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            if (i != j)
                link.alpha[j * 3 + i] = d.chance(0.1) ? 0.0 : d.log_uniform(1e-3, 10.0);
    for (auto &n : link.noise)
        n = d.log_uniform(1e-3, 1e2);
    auto psd = random_psd(d, 3);
    if (psd[1] + psd[2] == 0.0)
        psd[1] = 1.0;
    const std::array<std::size_t, 2> group{1, 2};
    const auto r = reallocation_gain(link, psd, group);
    if (r.rates_after[0] < r.rates_before[0] - slack(r.rates_before[0]))
        return nlohmann::json{
            {"link", link_json(link)}, {"psd", psd}, {"before", r.rates_before[0]}, {"after", r.rates_after[0]}};
    return std::nullopt;
}

Outcome log_ratio(std::size_t k, std::size_t per_c)
{
    static constexpr std::array<double, 4> cs{1.001, 2.0, 10.0, 1000.0};
    const double c = cs[k / per_c];
    const double x = static_cast<double>(k % per_c + 1) / static_cast<double>(per_c);
    auto f = [c](double t) { return std::log((c + t) / (c - t)) / t; };
    if (f(1.0) < f(x) - slack(f(1.0)))
        return nlohmann::json{{"c", c}, {"x", x}, {"f1", f(1.0)}, {"fx", f(x)}};
    return std::nullopt;
}

Outcome power_region(std::size_t, Draw &d)
{
    const double alpha = d.uniform(0.01, 0.49);
    const double p0 = fdma_power_region_threshold(alpha);
    const double at_share = sharing_sum_rate(alpha, 0.5 * p0, 0.5 * p0);
    const double at_fdma = reallocated_sum_rate(0.5 * p0, 0.5 * p0);
    if (std::abs(at_share - at_fdma) > 1e-9)
        return nlohmann::json{{"alpha", alpha}, {"p0", p0}, {"sharing", at_share}, {"fdma", at_fdma}};
    for (double side : {-1.0, 1.0})
    {
        const double p = p0 * (1.0 + 0.01 * side);
        const double diff = reallocated_sum_rate(0.5 * p, 0.5 * p) - sharing_sum_rate(alpha, 0.5 * p, 0.5 * p);
        if (diff * side <= 0.0)
            return nlohmann::json{{"alpha", alpha}, {"p", p}, {"fdma_minus_sharing", diff}};
    }
    // Asymmetric budgets: the sign of the gain follows the closed-form indicator.
    const double p1 = d.uniform(0.0, 2.0 * p0), p2 = d.uniform(0.0, 2.0 * p0);
    const double diff = reallocated_sum_rate(p1, p2) - sharing_sum_rate(alpha, p1, p2);
    const double ind = fdma_gain_indicator(alpha, p1, p2);
    if (std::abs(diff) > 1e-10 * std::max(1.0, reallocated_sum_rate(p1, p2)) && (diff > 0.0) != (ind > 0.0))
        return nlohmann::json{{"alpha", alpha}, {"p1", p1}, {"p2", p2}, {"fdma_minus_sharing", diff}, {"indicator", ind}};
    return std::nullopt;
}

Outcome symmetric_split(std::size_t, Draw &d)
{
    const double alpha = d.uniform(0.01, 0.49);
    const double p = d.uniform(0.05, 0.95) * fdma_power_region_threshold(alpha);
    constexpr std::size_t steps = 2000;
    const double mid = sharing_sum_rate(alpha, 0.5 * p, 0.5 * p);
    for (std::size_t k = 0; k <= steps; ++k)
    {
        const double p1 = p * static_cast<double>(k) / steps;
        const double v = sharing_sum_rate(alpha, p1, p - p1);
        if (v > mid + slack(mid))
            return nlohmann::json{{"alpha", alpha}, {"p", p}, {"p1", p1}, {"value", v}, {"symmetric", mid}};
    }
    return std::nullopt;
}

Outcome envelope_shape(std::size_t, Draw &d)
{
    const double alpha = d.uniform(0.01, 0.49);
    const auto t = solve_tangency(alpha);
    auto r = [&](double p) { return r_star_flat(t, p).value; };
    for (int trial = 0; trial < 5; ++trial)
    {
        const double p = d.uniform(0.0, 3.0 * t.p_h);
        const double upper = std::max(f_star(alpha, p), h_star(p));
        const double v = r(p);
        if (v < upper - slack(upper))
            return nlohmann::json{{"alpha", alpha}, {"p", p}, {"envelope", v}, {"max_branch", upper}};
        if ((p <= t.p_f || p >= t.p_h) && std::abs(v - upper) > slack(upper))
            return nlohmann::json{{"alpha", alpha}, {"p", p}, {"envelope", v}, {"max_branch", upper}};
        const double a = d.uniform(0.0, 3.0 * t.p_h), b = d.uniform(0.0, 3.0 * t.p_h);
        const double midpoint = r(0.5 * (a + b)), chord = 0.5 * (r(a) + r(b));
        if (midpoint < chord - 1e-10)
            return nlohmann::json{{"alpha", alpha}, {"a", a}, {"b", b}, {"midpoint", midpoint}, {"chord", chord}};
        const double lo = std::min(a, b), hi = std::max(a, b);
        if (hi - lo > 1e-9 * hi && !(r(lo) < r(hi)))
            return nlohmann::json{{"alpha", alpha}, {"lo", lo}, {"hi", hi}, {"r_lo", r(lo)}, {"r_hi", r(hi)}};
    }
    return std::nullopt;
}

Outcome interference_convexity(std::size_t, Draw &d)
{
    const double p = d.log_uniform(1e-3, 1e4), n = d.log_uniform(1e-3, 1e2);
    const double i1 = d.uniform(0.0, 100.0), i2 = d.uniform(0.0, 100.0);
    auto g = [&](double i) { return std::log1p(p / (n + i)); };
    const double mid = g(0.5 * (i1 + i2)), chord = 0.5 * (g(i1) + g(i2));
    if (mid > chord + slack(chord))
        return nlohmann::json{{"p", p}, {"n", n}, {"i1", i1}, {"i2", i2}, {"midpoint", mid}, {"chord", chord}};
    return std::nullopt;
}

Outcome coupling_boundary(std::size_t k, Draw &d)
{
    FlatChannel link{2, {0.0, kStrongCoupling, kStrongCoupling, 0.0}, {d.log_uniform(1e-3, 1e2), d.log_uniform(1e-3, 1e2)}};
    const double p = d.log_uniform(1e-3, 1e4);
    std::vector<double> psd;
    switch (k % 3)
    {
    case 0:
        psd = {p, 0.0};
        break;
    case 1:
        psd = {0.0, p};
        break;
    default:
        psd = {p, d.log_uniform(1e-3, 1e4)};
    }
    const std::array<std::size_t, 2> group{0, 1};
    const auto r = reallocation_gain(link, psd, group);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const double tol = slack(r.rates_before[i]);
        const bool on_axis = k % 3 != 2;
        if (r.rates_after[i] < r.rates_before[i] - tol ||
            (on_axis && std::abs(r.rates_after[i] - r.rates_before[i]) > tol))
            return nlohmann::json{{"link", link_json(link)}, {"psd", psd},
                                  {"user", i},               {"before", r.rates_before[i]},
                                  {"after", r.rates_after[i]}};
    }
    return std::nullopt;
}

} // namespace

bool PropertyReport::passed() const
{
    return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.failed == 0; });
}

PropertyReport property_suite(std::uint64_t seed, const PropertyCounts &counts, Execution exec)
{
    PropertyReport report;
    report.seed = seed;
    auto &out = report.results;
    out.push_back(run_property("strong_coupling_fdma_gain", 1, counts.strong_coupling, seed, exec, strong_coupling));
    out.push_back(run_property("outsider_gain", 2, counts.outsider, seed, exec, outsider));
    out.push_back(run_property("log_ratio_peak", 3, 4 * counts.log_ratio, seed, exec,
                               [&](std::size_t k, Draw &) { return log_ratio(k, counts.log_ratio); }));
    out.push_back(run_property("power_region_boundary", 4, counts.power_region, seed, exec, power_region));
    out.push_back(run_property("symmetric_split_optimum", 5, counts.symmetric_split, seed, exec, symmetric_split));
    out.push_back(run_property("envelope_shape", 6, counts.envelope_shape, seed, exec, envelope_shape));
    out.push_back(
        run_property("interference_convexity", 7, counts.interference_convexity, seed, exec, interference_convexity));
    out.push_back(run_property("coupling_boundary", 8, counts.coupling_boundary, seed, exec, coupling_boundary));
    return report;
}

nlohmann::json to_json(const PropertyReport &report)
{
    nlohmann::json props = nlohmann::json::array();
    for (const auto &r : report.results)
        props.push_back({{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}, {"counterexample", r.counterexample}});
    return {{"seed", report.seed}, {"passed", report.passed()}, {"properties", props}};
}

nlohmann::json to_json(const Check &check)
{
    return {{"name", check.name}, {"passed", check.passed}, {"skipped", check.skipped}, {"detail", check.detail}};
}

// ---------------------------------------------------------------------------------------
// Channel checks

namespace
{

bool symmetric_two_user(const ChannelSpec &spec)
{
    if (spec.users() != 2 || spec.budgets()[0] != spec.budgets()[1])
        return false;
    for (std::size_t m = 0; m < spec.subchannels(); ++m)
        if (spec.alpha(m, 0, 1) != spec.alpha(m, 1, 0) || spec.noise(m, 0) != spec.noise(m, 1))
            return false;
    return spec.weights()[0] == spec.weights()[1];
}

} // namespace

std::vector<Check> spec_checks(const ChannelSpec &spec, const GridConfig &grid, const OracleConfig &oracle)
{
    std::vector<Check> checks;
    const auto hulls = build_hulls(spec, grid);
    const auto result = solve(spec, hulls);
    const double value = result.value;
    const double scale = 1.0 + std::abs(value);

    const double achieved = total_rates(spec, result.allocation).weighted(spec.weights());
    checks.push_back({"allocation_achieves_value", std::abs(achieved - value) <= 1e-9 * scale, false,
                      {{"value", value}, {"recomputed", achieved}}});

    bool within = true;
    for (std::size_t i = 0; i < spec.users(); ++i)
        within = within && result.power[i] <= spec.budgets()[i] * (1.0 + 1e-8) + 1e-12;
    checks.push_back({"budgets_respected", within, false, {{"power", result.power}, {"budgets", spec.budgets()}}});

    std::vector<std::size_t> pieces(spec.subchannels(), 0);
    for (const auto &p : result.allocation.pieces())
        ++pieces[spec.locate(p.start, p.end)];
    const bool sparse = std::all_of(pieces.begin(), pieces.end(), [&](auto c) { return c <= spec.users() + 1; });
    checks.push_back({"pieces_per_subchannel", sparse, false, {{"pieces", pieces}, {"limit", spec.users() + 1}}});

    const auto gap = duality_gap(spec, hulls, result);
    checks.push_back({"duality_gap", gap.gap >= -1e-9 && gap.gap <= 1e-6 * scale, false,
                      {{"gap", gap.gap}, {"dual", gap.dual}, {"lambda", gap.lambda}}});

    const auto dual = dual_value(spec, hulls, result.prices);
    checks.push_back({"hull_dual_matches_raw", std::abs(dual.value - dual.hull_value) <= 1e-9 * (1.0 + std::abs(dual.value)),
                      false, {{"raw", dual.value}, {"hull", dual.hull_value}}});

    std::optional<double> oracle_value;
    if (oracle_work(spec, oracle) <= oracle.cap)
    {
        const auto best = exhaustive_best(spec, oracle);
        oracle_value = best.value;
        checks.push_back({"oracle_never_beats_solver", best.value <= value + best.tolerance, false,
                          {{"oracle", best.value}, {"solver", value}, {"tolerance", best.tolerance}}});
    }
    else
    {
        checks.push_back({"oracle_never_beats_solver", true, true, {{"work", oracle_work(spec, oracle)}, {"cap", oracle.cap}}});
    }

    if (symmetric_two_user(spec))
    {
        const double sum = spec.budgets()[0] + spec.budgets()[1];
        const auto sym = solve_symmetric_selective(spec, sum);
        const double closed = spec.weights()[0] * sym.value;
        double bound = 0.0;
        bool inside = true;
        for (const auto &p : sym.allocation.pieces())
        {
            const std::size_t m = spec.locate(p.start, p.end);
            try
            {
                bound += p.width() * hulls[m]->interpolation_bound(p.psd);
            }
            catch (const BoxError &)
            {
                inside = false;
            }
        }
        bool ok = closed >= value - 1e-9 * scale && (!oracle_value || closed >= *oracle_value - 1e-9 * scale);
        if (inside)
            ok = ok && closed - value <= bound + 1e-9 * scale;
        checks.push_back({"symmetric_closed_form", ok, false,
                          {{"closed_form", closed},
                           {"solver", value},
                           {"oracle", oracle_value ? nlohmann::json(*oracle_value) : nlohmann::json()},
                           {"grid_bound", inside ? nlohmann::json(bound) : nlohmann::json()}}});
    }
    return checks;
}

} // namespace spectra
