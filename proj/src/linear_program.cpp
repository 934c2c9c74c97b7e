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

#include "spectra/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectra
{

const char *to_string(LpStatus status)
{
    switch (status)
    {
    case LpStatus::optimal:
        return "optimal";
    case LpStatus::infeasible:
        return "infeasible";
    case LpStatus::unbounded:
        return "unbounded";
    case LpStatus::iteration_limit:
        return "iteration_limit";
    }
    return "unknown";
}

namespace
{

constexpr double kPivotTolerance = 1e-9;

struct Tableau
{
    Eigen::MatrixXd T; // rows x (structural + slack + artificial)
    Eigen::VectorXd b;
    std::size_t structural = 0;
    std::size_t first_artificial = 0;
    std::vector<std::size_t> basis;
};

enum class PhaseEnd
{
    optimal,
    unbounded,
    iteration_limit
};

class Simplex
{
public:
    Simplex(Tableau &t, const LpOptions &options, std::size_t &iterations, std::size_t limit)
        : t_(t), options_(options), iterations_(iterations), limit_(limit)
    {
    }

    // Maximizes cost^T x over the current basis; columns with allowed[j] == false never enter.
    PhaseEnd run(const Eigen::VectorXd &cost, const std::vector<bool> &allowed)
    {
        const auto rows = static_cast<Eigen::Index>(t_.basis.size());
        const auto cols = t_.T.cols();
        const double price_tol = 1e-11 * (1.0 + cost.cwiseAbs().maxCoeff());
        std::size_t degenerate_run = 0;
        while (true)
        {
            factor();
            Eigen::VectorXd cb(rows);
            for (Eigen::Index i = 0; i < rows; ++i)
                cb[i] = cost[static_cast<Eigen::Index>(t_.basis[i])];
            y_ = lu_.transpose().solve(cb);

            const bool bland = degenerate_run >= options_.degenerate_limit;
            Eigen::Index entering = -1;
            double best = price_tol;
            for (Eigen::Index j = 0; j < cols; ++j)
            {
                if (!allowed[j] || in_basis_[j])
                    continue;
                const double d = cost[j] - y_.dot(t_.T.col(j));
                if (d > best)
                {
                    entering = j;
                    best = d;
                    if (bland)
                        break;
                }
            }
            if (entering < 0)
                return PhaseEnd::optimal;
            if (iterations_ >= limit_)
                return PhaseEnd::iteration_limit;
            ++iterations_;

            const Eigen::VectorXd u = lu_.solve(t_.T.col(entering));
            Eigen::Index leaving = -1;
            double theta = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < rows; ++i)
            {
                if (u[i] <= kPivotTolerance)
                    continue;
                const double ratio = std::max(0.0, x_[i]) / u[i];
                const bool tie = leaving >= 0 && std::abs(ratio - theta) <= 1e-12 * std::max(1.0, theta);
                if ((!tie && ratio < theta) || (tie && t_.basis[i] < t_.basis[leaving]))
                {
                    leaving = i;
                    theta = tie ? std::min(theta, ratio) : ratio;
                }
            }
            if (leaving < 0)
                return PhaseEnd::unbounded;
            degenerate_run = theta <= options_.tolerance ? degenerate_run + 1 : 0;
            pivot(leaving, entering);
        }
    }

    void pivot(Eigen::Index row, Eigen::Index column)
    {
        in_basis_[t_.basis[row]] = false;
        t_.basis[row] = static_cast<std::size_t>(column);
        in_basis_[column] = true;
    }

    void factor()
    {
        const auto rows = static_cast<Eigen::Index>(t_.basis.size());
        if (in_basis_.size() != static_cast<std::size_t>(t_.T.cols()))
        {
            in_basis_.assign(t_.T.cols(), false);
            for (auto k : t_.basis)
                in_basis_[k] = true;
        }
        Eigen::MatrixXd B(rows, rows);
        for (Eigen::Index i = 0; i < rows; ++i)
            B.col(i) = t_.T.col(static_cast<Eigen::Index>(t_.basis[i]));
        lu_.compute(B);
        x_ = lu_.solve(t_.b);
    }

    const Eigen::VectorXd &x() const { return x_; }
    const Eigen::VectorXd &y() const { return y_; }
    const Eigen::PartialPivLU<Eigen::MatrixXd> &lu() const { return lu_; }

private:
    Tableau &t_;
    const LpOptions &options_;
    std::size_t &iterations_;
    std::size_t limit_;
    std::vector<bool> in_basis_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::VectorXd x_, y_;
};

} // namespace

LpResult solve_lp(const LinearProgram &lp, const LpOptions &options)
{
    const auto rows = lp.A.rows();
    const auto n = lp.A.cols();
    if (lp.b.size() != rows || lp.c.size() != n || static_cast<Eigen::Index>(lp.sense.size()) != rows)
        throw std::invalid_argument("linear program dimensions disagree");
    if (rows == 0)
        throw std::invalid_argument("linear program needs at least one row");
    for (Eigen::Index i = 0; i < rows; ++i)
        if (!(lp.b[i] >= 0.0))
            throw std::invalid_argument("linear program right-hand side must be non-negative");

    Eigen::Index slacks = 0, artificials = 0;
    for (auto s : lp.sense)
        (s == RowSense::less_equal ? slacks : artificials) += 1;

    Tableau t;
    t.structural = static_cast<std::size_t>(n);
    t.first_artificial = static_cast<std::size_t>(n + slacks);
    t.T = Eigen::MatrixXd::Zero(rows, n + slacks + artificials);
    t.T.leftCols(n) = lp.A;
    t.b = lp.b;
    t.basis.resize(rows);
    Eigen::Index next_slack = n, next_art = n + slacks;
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const Eigen::Index k = lp.sense[i] == RowSense::less_equal ? next_slack++ : next_art++;
        t.T(i, k) = 1.0;
        t.basis[i] = static_cast<std::size_t>(k);
    }

    const auto total = t.T.cols();
    const std::size_t limit = options.max_iterations ? options.max_iterations
                                                     : 50 * static_cast<std::size_t>(rows + n);
    LpResult out;
    Simplex simplex(t, options, out.iterations, limit);

    if (artificials > 0)
    {
        Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
        phase1.tail(artificials).setConstant(-1.0);
        std::vector<bool> allowed(total, true);
        const auto end = simplex.run(phase1, allowed);
        if (end == PhaseEnd::iteration_limit)
        {
            out.status = LpStatus::iteration_limit;
            return out;
        }
        simplex.factor();
        double infeasibility = 0.0;
        for (Eigen::Index i = 0; i < rows; ++i)
            if (t.basis[i] >= t.first_artificial)
                infeasibility += std::max(0.0, simplex.x()[i]);
        if (infeasibility > options.tolerance * (1.0 + lp.b.cwiseAbs().maxCoeff()))
        {
            out.status = LpStatus::infeasible;
            return out;
        }
        // Drive zero-level artificials out of the basis where some real column allows it.
        for (Eigen::Index i = 0; i < rows; ++i)
        {
            if (t.basis[i] < t.first_artificial)
                continue;
            simplex.factor();
            Eigen::VectorXd e = Eigen::VectorXd::Zero(rows);
            e[i] = 1.0;
            const Eigen::VectorXd row = simplex.lu().transpose().solve(e);
            for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(t.first_artificial); ++j)
            {
                if (std::find(t.basis.begin(), t.basis.end(), static_cast<std::size_t>(j)) != t.basis.end())
                    continue;
                if (std::abs(row.dot(t.T.col(j))) > kPivotTolerance)
                {
                    simplex.pivot(i, j);
                    break;
                }
            }
        }
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(total);
    cost.head(n) = lp.c;
    std::vector<bool> allowed(total, true);
    for (Eigen::Index j = static_cast<Eigen::Index>(t.first_artificial); j < total; ++j)
        allowed[j] = false;
    const auto end = simplex.run(cost, allowed);
    if (end == PhaseEnd::unbounded)
    {
        out.status = LpStatus::unbounded;
        return out;
    }
    if (end == PhaseEnd::iteration_limit)
    {
        out.status = LpStatus::iteration_limit;
        return out;
    }

    simplex.factor();
    out.status = LpStatus::optimal;
    out.basis = t.basis;
    out.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < rows; ++i)
        if (t.basis[i] < static_cast<std::size_t>(n))
            out.x[static_cast<Eigen::Index>(t.basis[i])] = std::max(0.0, simplex.x()[i]);
    out.value = lp.c.dot(out.x);
    out.y = simplex.y();

    const double price_tol = 1e-11 * (1.0 + cost.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(t.first_artificial) && !out.degenerate_optimum; ++j)
    {
        if (std::find(t.basis.begin(), t.basis.end(), static_cast<std::size_t>(j)) != t.basis.end())
            continue;
        if (std::abs(cost[j] - out.y.dot(t.T.col(j))) <= price_tol)
            out.degenerate_optimum = true;
    }
    return out;
}

} // namespace spectra
