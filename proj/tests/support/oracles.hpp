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

// Independent reference implementations used to cross-check the library.

#ifndef FMF_TEST_ORACLES_HPP
#define FMF_TEST_ORACLES_HPP

#include "fmf/mode_solver.hpp"
#include "fmf/ttdl_designer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle
{
    inline const std::string kData = FMF_DATA_DIR;

    // ---- classical step-index fiber -------------------------------------

    // u J_{l+1}(u) K_l(w) - w K_{l+1}(w) J_l(u) with V^2 = u^2 + w^2; zero at guided modes.
    // Multiplied through by J_l K_l, so it has no poles.
    inline double step_index_eigen(int l, double u, double v)
    {
        const double w = std::sqrt(std::max(v * v - u * u, 0.0));
        return u * std::cyl_bessel_j(l + 1, u) * std::cyl_bessel_k(l, w) -
               w * std::cyl_bessel_k(l + 1, w) * std::cyl_bessel_j(l, u);
    }

    // Guided n_eff of a core of radius a and index n1 in cladding n2, descending.
    inline std::vector<double> step_index_modes(int l, double a_um, double n1, double n2, double lambda_um)
    {
        const double k = 2.0 * M_PI / lambda_um;
        const double v = k * a_um * std::sqrt(n1 * n1 - n2 * n2);
        const int steps = 20000;
        std::vector<double> n_eff;
        auto f = [&](double u) { return step_index_eigen(l, u, v); };
        double u0 = 1e-6 * v;
        double f0 = f(u0);
        for (int i = 1; i <= steps; ++i)
        {
            const double u1 = v * (1e-6 + (1.0 - 2e-6) * i / steps);
            const double f1 = f(u1);
            if ((f0 < 0.0) != (f1 < 0.0))
            {
                double lo = u0, hi = u1, flo = f0;
                for (int it = 0; it < 200 && hi - lo > 0.0; ++it)
                {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi)
                        break;
                    const double fm = f(mid);
                    if ((fm < 0.0) == (flo < 0.0))
                        lo = mid, flo = fm;
                    else
                        hi = mid;
                }
                const double u = 0.5 * (lo + hi);
                const double beta_over_k = std::sqrt(n1 * n1 - std::pow(u / (k * a_um), 2));
                n_eff.push_back(beta_over_k);
            }
            u0 = u1;
            f0 = f1;
        }
        std::sort(n_eff.begin(), n_eff.end(), std::greater<>());
        return n_eff;
    }

    // ---- exhaustive placement search --------------------------------------

    struct Affine
    {
        std::vector<double> c;
        double k = 0.0;
        double operator()(const std::vector<double> &x) const
        {
            double s = k;
            for (std::size_t j = 0; j < c.size(); ++j)
                s += c[j] * x[j];
            return s;
        }
    };

    struct GridOptimum
    {
        bool feasible = false;
        double delta_d = -1e300;
        std::vector<double> x;
        int free_variables = 0;
    };

    // Maximises D_2 - D_1 subject to normalisation, equal delay increments and equal
    // dispersion increments, with every length on [0, 1]. Free variables after
    // elimination are enumerated on a grid of spacing h; the rest are solved exactly.
    inline GridOptimum grid_search(const fmf::ConversionGraph &graph, const fmf::ModeTable &table,
                                   double delta_tau, double h = 1e-3)
    {
        const auto vars = graph.variables();
        const std::size_t n = vars.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t j = 0; j < n; ++j)
            index[vars[j]] = j;

        std::vector<Affine> tau, disp, norm;
        const double tau_ref = table.at({0, 1}).tau_ps_per_km;
        for (const auto &sample : graph.samples)
        {
            Affine t{std::vector<double>(n, 0.0)}, d{std::vector<double>(n, 0.0)}, s{std::vector<double>(n, 0.0)};
            for (const auto &seg : sample.segments)
            {
                const auto &m = table.at(seg.mode);
                const double rel = m.tau_ps_per_km - tau_ref;
                if (seg.is_variable())
                {
                    const auto j = index[seg.variable];
                    t.c[j] += rel, d.c[j] += m.dispersion_ps_per_km_nm, s.c[j] += 1.0;
                }
                else
                {
                    t.k += rel * seg.fixed_length, d.k += m.dispersion_ps_per_km_nm * seg.fixed_length;
                    s.k += seg.fixed_length;
                }
            }
            tau.push_back(t), disp.push_back(d), norm.push_back(s);
        }

        // Equality rows E x = e.
        std::vector<std::vector<double>> e_rows;
        std::vector<double> e_rhs;
        auto add = [&](const Affine &a, double target)
        {
            if (std::all_of(a.c.begin(), a.c.end(), [](double v) { return v == 0.0; }))
                return;
            e_rows.push_back(a.c);
            e_rhs.push_back(target - a.k);
        };
        auto diff = [](const Affine &a, const Affine &b)
        {
            Affine r{a.c, a.k - b.k};
            for (std::size_t j = 0; j < r.c.size(); ++j)
                r.c[j] -= b.c[j];
            return r;
        };
        for (const auto &s : norm)
            add(s, 1.0);
        for (std::size_t i = 0; i + 1 < tau.size(); ++i)
            add(diff(tau[i + 1], tau[i]), delta_tau);
        const Affine objective = diff(disp[1], disp[0]);
        for (std::size_t i = 1; i + 1 < disp.size(); ++i)
        {
            const Affine step = diff(diff(disp[i + 1], disp[i]), objective);
            add(step, 0.0);
        }

        // Gauss-Jordan over a chosen column order; returns false if the columns in
        // `order` before the free set do not span the rows.
        struct Reduced
        {
            std::vector<std::vector<double>> rows;
            std::vector<double> rhs;
            std::vector<int> pivot_col;
            std::size_t rank = 0;
            double worst = 0.0; // largest |coefficient| on a free column
        };
        auto reduce = [&](const std::vector<std::size_t> &order)
        {
            Reduced red{e_rows, e_rhs, {}, 0, 0.0};
            const std::size_t m = red.rows.size();
            for (const auto c : order)
            {
                if (red.rank == m)
                    break;
                std::size_t best = red.rank;
                for (std::size_t i = red.rank; i < m; ++i)
                    if (std::abs(red.rows[i][c]) > std::abs(red.rows[best][c]))
                        best = i;
                if (std::abs(red.rows[best][c]) < 1e-9)
                    continue;
                const std::size_t r = red.rank;
                std::swap(red.rows[r], red.rows[best]);
                std::swap(red.rhs[r], red.rhs[best]);
                const double p = red.rows[r][c];
                for (auto &v : red.rows[r])
                    v /= p;
                red.rhs[r] /= p;
                for (std::size_t i = 0; i < m; ++i)
                    if (i != r && red.rows[i][c] != 0.0)
                    {
                        const double f = red.rows[i][c];
                        for (std::size_t j = 0; j < n; ++j)
                            red.rows[i][j] -= f * red.rows[r][j];
                        red.rhs[i] -= f * red.rhs[r];
                    }
                red.pivot_col.push_back(static_cast<int>(c));
                ++red.rank;
            }
            for (std::size_t i = 0; i < red.rank; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (std::find(red.pivot_col.begin(), red.pivot_col.end(), static_cast<int>(j)) ==
                        red.pivot_col.end())
                        red.worst = std::max(red.worst, std::abs(red.rows[i][j]));
            return red;
        };

        std::vector<std::size_t> natural(n);
        for (std::size_t j = 0; j < n; ++j)
            natural[j] = j;
        Reduced red = reduce(natural);
        GridOptimum best;
        for (std::size_t i = red.rank; i < red.rows.size(); ++i)
            if (std::abs(red.rhs[i]) > 1e-9)
                return best; // inconsistent
        const std::size_t k = n - red.rank;
        best.free_variables = static_cast<int>(k);
        if (k > 3)
            return best;

        // Enumerate the free set whose elimination coefficients are smallest, so one grid
        // step moves the dependent lengths as little as possible.
        std::vector<bool> pick(n, false);
        std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
        do
        {
            std::vector<std::size_t> order;
            for (std::size_t j = 0; j < n; ++j)
                if (!pick[j])
                    order.push_back(j);
            for (std::size_t j = 0; j < n; ++j)
                if (pick[j])
                    order.push_back(j);
            auto candidate = reduce(order);
            if (candidate.rank == red.rank && candidate.worst < red.worst)
                red = std::move(candidate);
        } while (std::next_permutation(pick.begin(), pick.end()));

        const std::size_t r = red.rank;
        const auto &pivot_col = red.pivot_col;
        e_rows = red.rows;
        e_rhs = red.rhs;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < n; ++c)
            if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) == pivot_col.end())
                free.push_back(c);

        const int steps = static_cast<int>(std::lround(1.0 / h));
        std::vector<double> x(n, 0.0);
        std::vector<int> counter(free.size(), 0);
        while (true)
        {
            for (std::size_t f = 0; f < free.size(); ++f)
                x[free[f]] = counter[f] * h;
            bool ok = true;
            for (std::size_t i = 0; i < r && ok; ++i)
            {
                double v = e_rhs[i];
                for (const auto f : free)
                    v -= e_rows[i][f] * x[f];
                ok = v >= -1e-12 && v <= 1.0 + 1e-12;
                x[static_cast<std::size_t>(pivot_col[i])] = v;
            }
            if (ok)
            {
                const double value = objective(x);
                if (value > best.delta_d)
                    best.feasible = true, best.delta_d = value, best.x = x;
            }
            std::size_t f = 0;
            for (; f < free.size(); ++f)
            {
                if (++counter[f] <= steps)
                    break;
                counter[f] = 0;
            }
            if (f == free.size())
                break;
        }
        return best;
    }
}

#endif
