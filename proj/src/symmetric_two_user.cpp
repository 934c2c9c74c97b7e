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

#include "spectra/symmetric_two_user.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "spectra/fdma_analysis.hpp"

namespace spectra
{

namespace
{

constexpr std::size_t kScanPanels = 1024;
constexpr double kBracketEdge = 1e-9;
constexpr double kSlopeTolerance = 1e-8;

void require_weak_coupling(double alpha)
{
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("symmetric closed form needs 0 < alpha < 1/2, got " + std::to_string(alpha));
}

bool validates(double alpha, double p_f, double p_0)
{
    const double p_h = fdma_touch_point(alpha, p_f);
    if (!(p_f > 0.0 && p_f < p_0 && p_0 < p_h))
        return false;
    const double sf = f_star_slope(alpha, p_f);
    const double sh = h_star_slope(p_h);
    const double chord = (h_star(p_h) - f_star(alpha, p_f)) / (p_h - p_f);
    return std::abs(sf - sh) <= kSlopeTolerance * sh && std::abs(chord - sh) <= kSlopeTolerance * sh;
}

} // namespace

double f_star(double alpha, double p) { return 2.0 * std::log1p(0.5 * p / (1.0 + 0.5 * alpha * p)); }

bool f_star_formula_applies(double alpha, double p)
{
    return alpha > 0.0 && alpha < 0.5 && p >= 0.0 && p <= crossover_power(alpha);
}

double f_star_slope(double alpha, double p)
{
    return 2.0 * ((1.0 + alpha) / (2.0 + (1.0 + alpha) * p) - alpha / (2.0 + alpha * p));
}

double h_star(double p) { return std::log1p(p); }

double h_star_slope(double p) { return 1.0 / (1.0 + p); }

double crossover_power(double alpha) { return fdma_power_region_threshold(alpha); }

double tangency_residual(double alpha, double p)
{
    // ln((alpha p + 2)^3 / (4 ((1 + alpha) p + 2))) written with log1p so that the
    // trivial root at p = 0 does not drown the small-p values in cancellation noise.
    const double lhs = p * (alpha * (1.0 + alpha) * p + 4.0 * alpha - 2.0) /
                       ((alpha * p + 2.0) * ((1.0 + alpha) * p + 2.0));
    const double rhs = 3.0 * std::log1p(0.5 * alpha * p) - std::log1p(0.5 * (1.0 + alpha) * p);
    return lhs - rhs;
}

double fdma_touch_point(double alpha, double p_f)
{
    return 0.25 * p_f * (alpha * (1.0 + alpha) * p_f + 4.0 * alpha + 2.0);
}

TangencyError::TangencyError(const std::string &what, double lo_, double hi_, double rlo, double rhi)
    : std::runtime_error(what + " (bracket [" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                         "], residuals " + std::to_string(rlo) + ", " + std::to_string(rhi) + ")"),
      lo(lo_), hi(hi_), residual_lo(rlo), residual_hi(rhi)
{
}

TangencySolution solve_tangency(double alpha)
{
    require_weak_coupling(alpha);
    const double p_0 = crossover_power(alpha);
    const double lo = kBracketEdge * p_0;
    double hi = p_0 * (1.0 - kBracketEdge);
    auto residual = [alpha](double p) { return tangency_residual(alpha, p); };

    TangencySolution out;
    out.alpha = alpha;
    out.p_0 = p_0;

    for (int expansion = 0; expansion < 8 && out.roots.empty(); ++expansion)
    {
        const double step = (hi - lo) / kScanPanels;
        double a = lo;
        double fa = residual(a);
        for (std::size_t k = 1; k <= kScanPanels; ++k)
        {
            const double b = k == kScanPanels ? hi : lo + step * static_cast<double>(k);
            const double fb = residual(b);
            if (fa == 0.0)
                out.roots.push_back(a);
            else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0)
            {
                std::uintmax_t iters = 200;
                auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2);
                auto [x0, x1] = boost::math::tools::toms748_solve(residual, a, b, fa, fb, tol, iters);
                const double r = std::abs(residual(x0)) <= std::abs(residual(x1)) ? x0 : x1;
                out.roots.push_back(r);
            }
            a = b;
            fa = fb;
        }
        if (out.roots.empty())
            hi *= 2.0;
    }
    if (out.roots.empty())
        throw TangencyError("tangency equation has no sign change", lo, hi, residual(lo), residual(hi));

    std::optional<double> chosen;
    for (double r : out.roots)
        if (validates(alpha, r, p_0) && std::abs(residual(r)) < 1e-10)
        {
            chosen = r;
            break;
        }
    if (!chosen)
        throw TangencyError("no tangency root passes the common-tangent check", lo, hi, residual(lo),
                            residual(hi));

    out.p_f = *chosen;
    out.p_h = fdma_touch_point(alpha, out.p_f);
    out.slope = h_star_slope(out.p_h);
    out.residual = residual(out.p_f);
    return out;
}

const char *to_string(Regime regime)
{
    switch (regime)
    {
    case Regime::sharing:
        return "sharing";
    case Regime::mixture:
        return "mixture";
    case Regime::fdma:
        return "fdma";
    }
    return "unknown";
}

EnvelopeValue r_star_flat(const TangencySolution &t, double p)
{
    if (!(p >= 0.0))
        throw std::invalid_argument("power must be non-negative");
    if (p <= t.p_f)
        return {f_star(t.alpha, p), Regime::sharing, 0.0};
    if (p >= t.p_h)
        return {h_star(p), Regime::fdma, 1.0};
    const double lambda = (p - t.p_f) / (t.p_h - t.p_f);
    const double f = f_star(t.alpha, t.p_f);
    return {f + lambda * (h_star(t.p_h) - f), Regime::mixture, lambda};
}

EnvelopeValue r_star_flat(double alpha, double p)
{
    if (!(p >= 0.0))
        throw std::invalid_argument("power must be non-negative");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("cross gain must be non-negative");
    if (alpha >= kStrongCoupling)
        return {h_star(p), Regime::fdma, 1.0};
    if (alpha == 0.0)
        return {f_star(0.0, p), Regime::sharing, 0.0};
    return r_star_flat(solve_tangency(alpha), p);
}

double r_star_slope(double alpha, double p)
{
    if (alpha >= kStrongCoupling)
        return h_star_slope(p);
    if (alpha == 0.0)
        return f_star_slope(0.0, p);
    const auto t = solve_tangency(alpha);
    if (p < t.p_f)
        return f_star_slope(alpha, p);
    if (p < t.p_h)
        return t.slope;
    return h_star_slope(p);
}

namespace
{

std::vector<BandPiece> unit_band_pieces(double alpha, double p)
{
    const auto env = r_star_flat(alpha, p);
    std::vector<BandPiece> pieces;
    auto push = [&pieces](double start, double end, double p1, double p2) {
        if (end > start)
            pieces.push_back(BandPiece{start, end, {p1, p2}});
    };
    switch (env.regime)
    {
    case Regime::sharing:
        push(0.0, 1.0, 0.5 * p, 0.5 * p);
        break;
    case Regime::fdma:
        push(0.0, 0.5, p, 0.0);
        push(0.5, 1.0, 0.0, p);
        break;
    case Regime::mixture: {
        const auto t = solve_tangency(alpha);
        const double lambda = env.lambda;
        push(0.0, 1.0 - lambda, 0.5 * t.p_f, 0.5 * t.p_f);
        push(1.0 - lambda, 1.0 - 0.5 * lambda, t.p_h, 0.0);
        push(1.0 - 0.5 * lambda, 1.0, 0.0, t.p_h);
        break;
    }
    }
    return pieces;
}

} // namespace

SpectrumAllocation build_allocation_flat(double alpha, double p)
{
    return SpectrumAllocation(unit_band_pieces(alpha, p));
}

namespace
{

// Sub-channel envelope in normalized sum-PSD q, plus its price response.
struct Envelope
{
    double alpha = 0.0;
    double noise = 1.0;
    double bandwidth = 0.0;
    std::optional<TangencySolution> tangency;

    double value(double q) const
    {
        if (tangency)
            return r_star_flat(*tangency, q).value;
        return alpha >= kStrongCoupling ? h_star(q) : f_star(0.0, q);
    }

    // Demand at normalized price mu (nats per unit of q); continuous branches only.
    double demand(double mu) const
    {
        if (mu >= 1.0)
            return 0.0;
        if (alpha >= kStrongCoupling)
            return 1.0 / mu - 1.0;
        if (!tangency)
            return 2.0 / mu - 2.0;
        if (mu < tangency->slope)
            return std::max(tangency->p_h, 1.0 / mu - 1.0);
        // Root of f_star_slope(alpha, q) = mu, rationalized.
        const double a = alpha;
        const double c = 4.0 / mu - 4.0;
        const double q = c / ((1.0 + 2.0 * a) + std::sqrt((1.0 + 2.0 * a) * (1.0 + 2.0 * a) + a * (1.0 + a) * c));
        return std::min(q, tangency->p_f);
    }

    // Price per unit of real power at which this sub-channel jumps from p_f to p_h.
    std::optional<double> critical_price() const
    {
        if (!tangency)
            return std::nullopt;
        return tangency->slope / noise;
    }
};

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

} // namespace

OptimizationResult solve_symmetric_selective(const ChannelSpec &spec, double sum_power)
{
    if (spec.users() != 2)
        throw std::invalid_argument("symmetric solver needs exactly two users");
    if (!(sum_power >= 0.0) || !std::isfinite(sum_power))
        throw std::invalid_argument("sum power must be non-negative");

    const std::size_t subs = spec.subchannels();
    std::vector<Envelope> env(subs);
    std::map<double, TangencySolution> tangencies;
    SolverDiagnostics diag;
    for (std::size_t m = 0; m < subs; ++m)
    {
        const double a12 = spec.alpha(m, 0, 1);
        const double a21 = spec.alpha(m, 1, 0);
        if (!close(a12, a21) || !close(spec.noise(m, 0), spec.noise(m, 1)))
            throw std::invalid_argument("sub-channel " + std::to_string(m) + " is not symmetric");
        auto &e = env[m];
        e.alpha = a12;
        e.noise = spec.noise(m, 0);
        e.bandwidth = spec.bandwidth(m);
        if (e.alpha >= kStrongCoupling)
            diag.notes.push_back("sub-channel " + std::to_string(m) + ": alpha >= 1/2, FDMA envelope used");
        else if (e.alpha > 0.0)
        {
            auto it = tangencies.find(e.alpha);
            if (it == tangencies.end())
                it = tangencies.emplace(e.alpha, solve_tangency(e.alpha)).first;
            e.tangency = it->second;
        }
    }

    // Power actually spent by sub-channel m at normalized sum-PSD q.
    auto spend = [&](std::size_t m, double q) { return env[m].bandwidth * env[m].noise * q; };
    auto total_demand = [&](double mu) {
        double d = 0.0;
        for (std::size_t m = 0; m < subs; ++m)
            d += spend(m, env[m].demand(mu * env[m].noise));
        return d;
    };

    double mu_cap = 0.0;
    for (const auto &e : env)
        mu_cap = std::max(mu_cap, 1.0 / e.noise);

    std::vector<double> q(subs, 0.0);
    double price = mu_cap;

    bool settled = sum_power == 0.0;
    if (!settled)
    {
        // A budget that falls inside a demand jump is met by mixing on the jumping sub-channels.
        std::vector<double> criticals;
        for (const auto &e : env)
            if (auto c = e.critical_price())
                criticals.push_back(*c);
        std::sort(criticals.begin(), criticals.end());
        for (double c : criticals)
        {
            double fixed = 0.0, low = 0.0, high = 0.0;
            std::vector<bool> jumping(subs, false);
            for (std::size_t m = 0; m < subs; ++m)
            {
                auto cm = env[m].critical_price();
                if (cm && close(*cm, c))
                {
                    jumping[m] = true;
                    low += spend(m, env[m].tangency->p_f);
                    high += spend(m, env[m].tangency->p_h);
                }
                else
                    fixed += spend(m, env[m].demand(c * env[m].noise));
            }
            if (fixed + low <= sum_power && sum_power <= fixed + high)
            {
                const double theta = high > low ? std::clamp((sum_power - fixed - low) / (high - low), 0.0, 1.0) : 0.0;
                for (std::size_t m = 0; m < subs; ++m)
                {
                    if (jumping[m])
                    {
                        const auto &t = *env[m].tangency;
                        q[m] = t.p_f + theta * (t.p_h - t.p_f);
                    }
                    else
                        q[m] = env[m].demand(c * env[m].noise);
                }
                price = c;
                settled = true;
                break;
            }
        }
    }

    if (!settled)
    {
        double hi = mu_cap;
        double lo = 0.5 * mu_cap;
        while (total_demand(lo) < sum_power)
            lo *= 0.5;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (total_demand(mid) >= sum_power)
                lo = mid;
            else
                hi = mid;
            ++diag.iterations;
        }
        price = hi;
        double used = 0.0;
        for (std::size_t m = 0; m < subs; ++m)
        {
            q[m] = env[m].demand(hi * env[m].noise);
            used += spend(m, q[m]);
        }
        // The continuous branch lands just under budget; stretch onto it.
        if (used > 0.0 && used < sum_power)
        {
            const double scale = sum_power / used;
            if (scale - 1.0 < 1e-8)
                for (auto &v : q)
                    v *= scale;
        }
    }

    std::vector<BandPiece> pieces;
    double value = 0.0;
    const auto &edges = spec.edges();
    for (std::size_t m = 0; m < subs; ++m)
    {
        value += env[m].bandwidth * env[m].value(q[m]);
        for (auto piece : unit_band_pieces(env[m].alpha, q[m]))
        {
            piece.start = edges[m] + piece.start * env[m].bandwidth;
            piece.end = edges[m] + piece.end * env[m].bandwidth;
            for (auto &v : piece.psd)
                v *= env[m].noise;
            pieces.push_back(std::move(piece));
        }
        pieces.back().end = edges[m + 1];
    }
    for (std::size_t n = 1; n < pieces.size(); ++n)
        pieces[n].start = pieces[n - 1].end;

    SpectrumAllocation alloc(std::move(pieces));
    auto rates = total_rates(spec, alloc);
    auto power = alloc.powers();

    // Dual function of the sum-power problem at the returned price.
    double dual = price * sum_power;
    for (std::size_t m = 0; m < subs; ++m)
    {
        const double mu = price * env[m].noise;
        const double qm = env[m].demand(mu);
        dual += env[m].bandwidth * (env[m].value(qm) - mu * qm);
    }

    const double spent = power[0] + power[1];
    diag.primal_residual = std::max(0.0, spent - sum_power);
    diag.slackness_residual = price * (sum_power - spent);

    OptimizationResult out{value, std::move(alloc), std::move(rates.rates), std::move(power),
                           {price, price},     dual - value, std::move(diag)};
    return out;
}

} // namespace spectra
