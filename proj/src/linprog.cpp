// SPDX-License-Identifier: Apache-2.0
//
// fmf-ttdl: design tools for few-mode fiber true time delay lines
// Copyright (C) 2026 The fmf-ttdl Authors
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

#include "fmf/linprog.hpp"

#include "fmf/error.hpp"

#include <cmath>
#include <optional>

namespace fmf
{
    namespace
    {
        constexpr double kPivotEps = 1e-12;
        constexpr double kCostEps = 1e-11;

        // Column of the standard form (y >= 0) and how it maps back to an original variable.
        struct StdColumn
        {
            std::size_t original; // npos for slacks and artificials
            double sign;
        };

        constexpr std::size_t npos = static_cast<std::size_t>(-1);

        class Tableau
        {
        public:
            Tableau(std::size_t rows, std::size_t cols)
                : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, npos) {}

            double &at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
            double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
            double &rhs(std::size_t i) { return at(i, n_); }
            double rhs(std::size_t i) const { return at(i, n_); }
            double &cost(std::size_t j) { return at(m_, j); }

            std::size_t rows() const { return m_; }
            std::size_t cols() const { return n_; }
            std::vector<std::size_t> &basis() { return basis_; }

            void pivot(std::size_t r, std::size_t c)
            {
                const double p = at(r, c);
                for (std::size_t j = 0; j <= n_; ++j)
                    at(r, j) /= p;
                at(r, c) = 1.0;
                for (std::size_t i = 0; i <= m_; ++i)
                {
                    if (i == r)
                        continue;
                    const double factor = at(i, c);
                    if (factor == 0.0)
                        continue;
                    for (std::size_t j = 0; j <= n_; ++j)
                        at(i, j) -= factor * at(r, j);
                    at(i, c) = 0.0;
                }
                basis_[r] = c;
            }

            // Loads reduced costs for `costs` relative to the current basis.
            void set_objective(const std::vector<double> &costs)
            {
                for (std::size_t j = 0; j < n_; ++j)
                    cost(j) = costs[j];
                at(m_, n_) = 0.0;
                for (std::size_t i = 0; i < m_; ++i)
                {
                    const double cb = costs[basis_[i]];
                    if (cb == 0.0)
                        continue;
                    for (std::size_t j = 0; j <= n_; ++j)
                        at(m_, j) -= cb * at(i, j);
                }
            }

            // Maximises the loaded objective; columns with allowed[j] == false never enter.
            // Returns false if unbounded.
            bool optimise(const std::vector<bool> &allowed)
            {
                for (int iter = 0; iter < 100000; ++iter)
                {
                    std::size_t enter = npos;
                    for (std::size_t j = 0; j < n_; ++j)
                        if (allowed[j] && cost(j) > kCostEps)
                        {
                            enter = j;
                            break;
                        }
                    if (enter == npos)
                        return true;

                    std::size_t leave = npos;
                    double best = 0.0;
                    for (std::size_t i = 0; i < m_; ++i)
                    {
                        const double a = at(i, enter);
                        if (a <= kPivotEps)
                            continue;
                        const double ratio = rhs(i) / a;
                        if (leave == npos || ratio < best - 1e-15 ||
                            (ratio <= best + 1e-15 && basis_[i] < basis_[leave]))
                        {
                            leave = i;
                            best = ratio;
                        }
                    }
                    if (leave == npos)
                        return false;
                    pivot(leave, enter);
                }
                throw Error("simplex iteration limit exceeded");
            }

            double value_of(std::size_t col) const
            {
                for (std::size_t i = 0; i < m_; ++i)
                    if (basis_[i] == col)
                        return rhs(i);
                return 0.0;
            }

            void drop_row(std::size_t r)
            {
                std::vector<double> next((m_) * (n_ + 1));
                std::size_t k = 0;
                for (std::size_t i = 0; i <= m_; ++i)
                {
                    if (i == r)
                        continue;
                    for (std::size_t j = 0; j <= n_; ++j)
                        next[k * (n_ + 1) + j] = at(i, j);
                    ++k;
                }
                t_ = std::move(next);
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
                --m_;
            }

        private:
            std::size_t m_, n_;
            std::vector<double> t_;
            std::vector<std::size_t> basis_;
        };
    }

    LpResult solve_lp(const LinearProgram &lp, double tol)
    {
        const std::size_t n = lp.num_vars;
        if (lp.lower.size() != n || lp.upper.size() != n || lp.objective.size() != n || lp.rows.size() != lp.rhs.size())
            throw DomainError("linear program dimensions are inconsistent");
        for (const auto &row : lp.rows)
            if (row.size() != n)
                throw DomainError("linear program row has the wrong length");

        LpResult result;
        for (std::size_t j = 0; j < n; ++j)
            if (lp.lower[j] > lp.upper[j])
                return result; // empty box

        // Standard-form columns for the original variables.
        std::vector<StdColumn> columns;
        std::vector<double> offset(n, 0.0);
        std::vector<std::vector<std::size_t>> columns_of(n);
        std::vector<std::size_t> bounded; // originals needing y + s = U - L
        for (std::size_t j = 0; j < n; ++j)
        {
            const bool has_lo = std::isfinite(lp.lower[j]);
            const bool has_hi = std::isfinite(lp.upper[j]);
            if (has_lo)
            {
                offset[j] = lp.lower[j];
                columns_of[j].push_back(columns.size());
                columns.push_back({j, 1.0});
                if (has_hi)
                    bounded.push_back(j);
            }
            else if (has_hi)
            {
                offset[j] = lp.upper[j];
                columns_of[j].push_back(columns.size());
                columns.push_back({j, -1.0});
            }
            else
            {
                columns_of[j].push_back(columns.size());
                columns.push_back({j, 1.0});
                columns_of[j].push_back(columns.size());
                columns.push_back({j, -1.0});
            }
        }
        const std::size_t n_struct = columns.size();
        const std::size_t n_slack = bounded.size();
        const std::size_t n_eq = lp.rows.size();
        const std::size_t n_cols = n_struct + n_slack + n_eq; // artificials last
        const std::size_t n_rows = n_eq + n_slack;

        Tableau tab(n_rows, n_cols);
        for (std::size_t i = 0; i < n_eq; ++i)
        {
            double b = lp.rhs[i];
            for (std::size_t j = 0; j < n; ++j)
                b -= lp.rows[i][j] * offset[j];
            const double flip = b < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j)
                for (const auto c : columns_of[j])
                    tab.at(i, c) = flip * lp.rows[i][j] * columns[c].sign;
            tab.rhs(i) = flip * b;
            tab.at(i, n_struct + n_slack + i) = 1.0;
            tab.basis()[i] = n_struct + n_slack + i;
        }
        for (std::size_t k = 0; k < n_slack; ++k)
        {
            const std::size_t j = bounded[k];
            const std::size_t r = n_eq + k;
            tab.at(r, columns_of[j].front()) = 1.0;
            tab.at(r, n_struct + k) = 1.0;
            tab.rhs(r) = lp.upper[j] - lp.lower[j];
            tab.basis()[r] = n_struct + k;
        }

        auto is_artificial = [&](std::size_t c)
        { return c >= n_struct + n_slack; };

        // Phase one: drive the artificials to zero.
        std::vector<double> phase1(n_cols, 0.0);
        for (std::size_t i = 0; i < n_eq; ++i)
            phase1[n_struct + n_slack + i] = -1.0;
        tab.set_objective(phase1);
        std::vector<bool> allowed(n_cols, true);
        tab.optimise(allowed);

        double infeasibility = 0.0;
        for (std::size_t i = 0; i < n_eq; ++i)
            infeasibility += tab.value_of(n_struct + n_slack + i);
        if (infeasibility > tol)
        {
            for (std::size_t i = 0; i < n_eq; ++i)
                if (tab.value_of(n_struct + n_slack + i) > tol)
                    result.violated_rows.push_back(i);
            if (result.violated_rows.empty())
                for (std::size_t i = 0; i < n_eq; ++i)
                    if (tab.value_of(n_struct + n_slack + i) > 0.0)
                        result.violated_rows.push_back(i);
            return result;
        }

        // Pivot remaining (zero-valued) artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < tab.rows();)
        {
            if (!is_artificial(tab.basis()[r]))
            {
                ++r;
                continue;
            }
            std::size_t col = npos;
            double best = 1e-9;
            for (std::size_t c = 0; c < n_struct + n_slack; ++c)
                if (std::abs(tab.at(r, c)) > best)
                {
                    best = std::abs(tab.at(r, c));
                    col = c;
                }
            if (col == npos)
            {
                tab.drop_row(r);
                continue;
            }
            tab.pivot(r, col);
            ++r;
        }

        // Phase two.
        std::vector<double> phase2(n_cols, 0.0);
        for (std::size_t c = 0; c < n_struct; ++c)
            phase2[c] = columns[c].sign * lp.objective[columns[c].original];
        for (std::size_t c = n_struct + n_slack; c < n_cols; ++c)
            allowed[c] = false;
        tab.set_objective(phase2);
        if (!tab.optimise(allowed))
        {
            result.status = LpStatus::unbounded;
            return result;
        }

        result.status = LpStatus::optimal;
        result.x = offset;
        for (std::size_t c = 0; c < n_struct; ++c)
            result.x[columns[c].original] += columns[c].sign * tab.value_of(c);
        for (std::size_t j = 0; j < n; ++j)
            result.objective += lp.objective[j] * result.x[j];
        return result;
    }

    LpResult solve_lp_lexicographic(const LinearProgram &lp, double tol)
    {
        auto best = solve_lp(lp, tol);
        if (best.status != LpStatus::optimal)
            return best;

        LinearProgram work = lp;
        bool has_objective = false;
        for (const double c : lp.objective)
            has_objective = has_objective || c != 0.0;
        if (has_objective)
        {
            work.rows.push_back(lp.objective);
            work.rhs.push_back(best.objective);
        }

        for (std::size_t j = 0; j < lp.num_vars; ++j)
        {
            work.objective.assign(lp.num_vars, 0.0);
            work.objective[j] = -1.0;
            const auto step = solve_lp(work, tol);
            if (step.status != LpStatus::optimal)
                continue;
            std::vector<double> fix(lp.num_vars, 0.0);
            fix[j] = 1.0;
            work.rows.push_back(std::move(fix));
            work.rhs.push_back(step.x[j]);
            best.x = step.x;
        }
        best.objective = 0.0;
        for (std::size_t j = 0; j < lp.num_vars; ++j)
            best.objective += lp.objective[j] * best.x[j];
        return best;
    }
}
