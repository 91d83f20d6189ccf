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

#include "fmf/mode_solver.hpp"

#include "fmf/error.hpp"
#include "fmf/special.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fmf
{
    namespace
    {
        // Field and radial derivative at a radius.
        struct RadialState
        {
            double f;
            double df;
        };

        enum class Regime
        {
            oscillatory, // J_l(kappa r), Y_l(kappa r)
            evanescent,  // I_l(gamma r), K_l(gamma r)
            uniform      // kappa = gamma = 0: r^l, r^-l (1, ln r for l = 0)
        };

        struct LayerBasis
        {
            Regime regime;
            double s; // kappa or gamma, 1/um
            int l;
        };

        struct BasisValues
        {
            double u1, du1, u2, du2;
            double wronskian; // u1 du2 - u2 du1
        };

        LayerBasis make_basis(int l, double n_layer, double n_eff, double k0, double r_outer)
        {
            const double diff = n_layer - n_eff;
            const double s = k0 * std::sqrt(std::abs(diff) * (n_layer + n_eff));
            if (s * r_outer < 1e-8)
                return {Regime::uniform, 0.0, l};
            return {diff > 0.0 ? Regime::oscillatory : Regime::evanescent, s, l};
        }

        BasisValues evaluate(const LayerBasis &b, double r)
        {
            switch (b.regime)
            {
            case Regime::oscillatory:
            {
                const auto j = special::bessel_j_d(b.l, b.s * r);
                const auto y = special::bessel_y_d(b.l, b.s * r);
                return {j.value, b.s * j.derivative, y.value, b.s * y.derivative, 2.0 / (std::numbers::pi * r)};
            }
            case Regime::evanescent:
            {
                const auto i = special::bessel_i_d(b.l, b.s * r);
                const auto k = special::bessel_k_d(b.l, b.s * r);
                return {i.value, b.s * i.derivative, k.value, b.s * k.derivative, -1.0 / r};
            }
            case Regime::uniform:
            default:
                if (b.l == 0)
                    return {1.0, 0.0, std::log(r), 1.0 / r, 1.0 / r};
                {
                    const double p = std::pow(r, b.l);
                    return {p, b.l * p / r, 1.0 / p, -b.l / (p * r), -2.0 * b.l / r};
                }
            }
        }

        RadialState normalized(RadialState s, double r)
        {
            const double scale = std::hypot(s.f, r * s.df);
            return {s.f / scale, s.df / scale};
        }

        RadialState propagate(const LayerBasis &basis, RadialState in, double r_in, double r_out)
        {
            const auto a = evaluate(basis, r_in);
            const double c1 = (in.f * a.du2 - in.df * a.u2) / a.wronskian;
            const double c2 = (in.df * a.u1 - in.f * a.du1) / a.wronskian;
            const auto b = evaluate(basis, r_out);
            return {c1 * b.u1 + c2 * b.u2, c1 * b.du1 + c2 * b.du2};
        }

        // Bisection until the bracket stops shrinking or is narrower than tol.
        template <typename Fn>
        double bisect(Fn &&f, double a, double b, double fa, double tol)
        {
            for (int it = 0; it < 400; ++it)
            {
                const double mid = a + 0.5 * (b - a);
                if (mid <= a || mid >= b || (b - a) <= tol)
                    break;
                const double fm = f(mid);
                if (fm == 0.0)
                    return mid;
                if ((fm < 0.0) == (fa < 0.0))
                {
                    a = mid;
                    fa = fm;
                }
                else
                    b = mid;
            }
            return a + 0.5 * (b - a);
        }

        std::string describe_bracket(int l, double a, double b)
        {
            std::ostringstream os;
            os.precision(15);
            os << "l = " << l << ", bracket [" << a << ", " << b << "]";
            return os.str();
        }

        struct GuidedRange
        {
            double lo;
            double hi;
        };

        GuidedRange guided_range(const FiberProfile &profile, double lambda_um)
        {
            return {profile.cladding_index(lambda_um), profile.max_index(lambda_um)};
        }

        // Effective index of mode (l, m) at the probe wavelengths lambda0 +/- h.
        struct ProbeSamples
        {
            double minus, centre, plus;
        };

        ProbeSamples probe(const FiberProfile &profile, int l, double n0, double lambda0_um, double h)
        {
            return {track_mode(profile, l, lambda0_um - h, n0), n0, track_mode(profile, l, lambda0_um + h, n0)};
        }

        double tau_from(const ProbeSamples &s, double lambda0_um, double h)
        {
            const double slope = (s.plus - s.minus) / (2.0 * h);
            // (n - lambda dn/dlambda) / c in s/m, scaled to ps/km.
            return (s.centre - lambda0_um * slope) / kSpeedOfLight * 1e15;
        }

        double dispersion_from(const ProbeSamples &s, double lambda0_um, double h)
        {
            const double curvature = (s.plus - 2.0 * s.centre + s.minus) / (h * h);
            // -(lambda / c) d2n/dlambda2 with lambda in um and the curvature in 1/um^2 gives ps/(km nm) after 1e12.
            return -(lambda0_um / kSpeedOfLight) * curvature * 1e12;
        }

        double neff_of(const FiberProfile &profile, ModeId id, double lambda_um)
        {
            if (id.l < 0 || id.m < 1)
                throw DomainError("invalid mode " + to_string(id));
            const auto roots = find_roots(profile, id.l, lambda_um);
            if (static_cast<int>(roots.size()) < id.m)
                throw LookupError(to_string(id) + " is not guided at " + std::to_string(lambda_um) + " um");
            return roots[static_cast<std::size_t>(id.m - 1)];
        }
    }

    std::string to_string(ModeId id)
    {
        if (id.l < 10 && id.m < 10 && id.l >= 0 && id.m >= 0)
            return "LP" + std::to_string(id.l) + std::to_string(id.m);
        return "LP(" + std::to_string(id.l) + "," + std::to_string(id.m) + ")";
    }

    std::optional<ModeId> parse_mode_label(std::string_view label)
    {
        if (label.size() < 4 || label.substr(0, 2) != "LP")
            return std::nullopt;
        label.remove_prefix(2);
        if (label.front() == '(' && label.back() == ')')
        {
            label = label.substr(1, label.size() - 2);
            const auto comma = label.find(',');
            if (comma == std::string_view::npos)
                return std::nullopt;
            ModeId id;
            const auto lpart = label.substr(0, comma), mpart = label.substr(comma + 1);
            auto r1 = std::from_chars(lpart.data(), lpart.data() + lpart.size(), id.l);
            auto r2 = std::from_chars(mpart.data(), mpart.data() + mpart.size(), id.m);
            if (r1.ec != std::errc{} || r1.ptr != lpart.data() + lpart.size() ||
                r2.ec != std::errc{} || r2.ptr != mpart.data() + mpart.size() || id.l < 0 || id.m < 1)
                return std::nullopt;
            return id;
        }
        if (label.size() != 2 || !std::isdigit(static_cast<unsigned char>(label[0])) ||
            !std::isdigit(static_cast<unsigned char>(label[1])) || label[1] == '0')
            return std::nullopt;
        return ModeId{label[0] - '0', label[1] - '0'};
    }

    const ModeRecord *ModeTable::find(ModeId id) const
    {
        for (const auto &mode : modes)
            if (mode.id == id)
                return &mode;
        return nullptr;
    }

    const ModeRecord &ModeTable::at(ModeId id) const
    {
        if (const auto *mode = find(id))
            return *mode;
        throw LookupError("mode " + to_string(id) + " not present in mode table");
    }

    std::vector<double> ModeTable::separations() const
    {
        std::vector<double> out;
        for (std::size_t k = 0; k + 1 < modes.size(); ++k)
            out.push_back(modes[k].n_eff - modes[k + 1].n_eff);
        return out;
    }

    double ModeTable::min_separation() const
    {
        const auto s = separations();
        return s.empty() ? 0.0 : *std::min_element(s.begin(), s.end());
    }

    double characteristic_value(const FiberProfile &profile, int l, double n_eff, double lambda_um)
    {
        if (l < 0)
            throw DomainError("azimuthal order must be >= 0");
        const auto range = guided_range(profile, lambda_um);
        if (!(n_eff > range.lo && n_eff < range.hi))
            throw DomainError("trial effective index outside the guided range (n_clad, n_max)");

        const double k0 = 2.0 * std::numbers::pi / lambda_um;
        const auto &layers = profile.layers();

        // Innermost region: regular solution only.
        const double a0 = layers.front().outer_radius_um;
        const auto inner = make_basis(l, profile.layer_index(0, lambda_um), n_eff, k0, a0);
        const auto v0 = evaluate(inner, a0);
        auto state = normalized({v0.u1, v0.du1}, a0);

        for (std::size_t j = 1; j < layers.size(); ++j)
        {
            const double r_in = layers[j - 1].outer_radius_um;
            const double r_out = layers[j].outer_radius_um;
            const auto basis = make_basis(l, profile.layer_index(j, lambda_um), n_eff, k0, r_out);
            state = normalized(propagate(basis, state, r_in, r_out), r_out);
        }

        const double a = layers.back().outer_radius_um;
        const double gamma = k0 * std::sqrt((n_eff - range.lo) * (n_eff + range.lo));
        const auto k = special::bessel_k_d(l, gamma * a);
        const auto clad = normalized({k.value, gamma * k.derivative}, a);
        return a * (state.f * clad.df - state.df * clad.f);
    }

    std::vector<double> scan_characteristic(const FiberProfile &profile, int l, double lambda_um,
                                            std::span<const double> n_eff_grid, Exec exec)
    {
        std::vector<double> values(n_eff_grid.size());
        for_each_index(exec, n_eff_grid.size(), [&](std::size_t i)
                       { values[i] = characteristic_value(profile, l, n_eff_grid[i], lambda_um); });
        return values;
    }

    std::vector<double> find_roots(const FiberProfile &profile, int l, double lambda_um, const SolverOptions &options)
    {
        if (options.scan_points < 2)
            throw DomainError("scan_points must be >= 2");
        const auto range = guided_range(profile, lambda_um);
        const double lo = range.lo + options.edge_margin;
        const double hi = range.hi - options.edge_margin;
        if (!(hi > lo))
            return {};

        const auto n = static_cast<std::size_t>(options.scan_points);
        std::vector<double> grid(n);
        for (std::size_t i = 0; i < n; ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        grid.back() = hi;
        const auto values = scan_characteristic(profile, l, lambda_um, grid, options.exec);

        auto f = [&](double x)
        { return characteristic_value(profile, l, x, lambda_um); };

        std::vector<double> roots;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!std::isfinite(values[i]))
                throw BracketError("characteristic function is not finite at n_eff = " +
                                   std::to_string(grid[i]) + " (l = " + std::to_string(l) + ")");
            if (values[i] == 0.0)
            {
                roots.push_back(grid[i]);
                continue;
            }
            if (i + 1 < n && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0))
            {
                const double root = bisect(f, grid[i], grid[i + 1], values[i], options.root_tol);
                if (!(std::abs(f(root)) < 1e-6))
                    throw BracketError("sign change did not refine to a root: " +
                                       describe_bracket(l, grid[i], grid[i + 1]));
                roots.push_back(root);
            }
        }
        std::sort(roots.begin(), roots.end(), std::greater<>());
        return roots;
    }

    double track_mode(const FiberProfile &profile, int l, double lambda_um, double n_guess)
    {
        const auto range = guided_range(profile, lambda_um);
        const double lo_limit = range.lo + 1e-12;
        const double hi_limit = range.hi - 1e-12;
        auto f = [&](double x)
        { return characteristic_value(profile, l, x, lambda_um); };

        const double centre = std::clamp(n_guess, lo_limit, hi_limit);
        const double f0 = f(centre);
        if (f0 == 0.0)
            return centre;

        for (double h = 1e-8; h < 1e-2; h *= 2.0)
        {
            const double a = std::max(centre - h, lo_limit);
            const double b = std::min(centre + h, hi_limit);
            const double fa = a < centre ? f(a) : f0;
            const double fb = b > centre ? f(b) : f0;
            const bool left = (fa < 0.0) != (f0 < 0.0) || fa == 0.0;
            const bool right = (fb < 0.0) != (f0 < 0.0) || fb == 0.0;

            if (left || right)
            {
                std::optional<double> best;
                if (left)
                    best = fa == 0.0 ? a : bisect(f, a, centre, fa, 0.0);
                if (right)
                {
                    const double r = fb == 0.0 ? b : bisect(f, centre, b, f0, 0.0);
                    if (!best || std::abs(r - n_guess) < std::abs(*best - n_guess))
                        best = r;
                }
                return *best;
            }
            if (a == lo_limit && b == hi_limit)
                break;
        }
        throw ContinuationError("LP mode of order l = " + std::to_string(l) + " near n_eff = " +
                                std::to_string(n_guess) + " is not guided at " +
                                std::to_string(lambda_um) + " um");
    }

    ModeTable find_modes(const FiberProfile &profile, double lambda_um, const SolverOptions &options)
    {
        ModeTable table;
        table.profile_name = profile.name();
        table.lambda0_um = lambda_um;
        if (!profile.is_guiding())
            return table;

        for (int l = 0; l < 1000; ++l)
        {
            const auto roots = find_roots(profile, l, lambda_um, options);
            if (roots.empty())
                break;
            for (std::size_t k = 0; k < roots.size(); ++k)
                table.modes.push_back({{l, static_cast<int>(k) + 1}, roots[k], 0.0, 0.0, lambda_um});
        }
        std::sort(table.modes.begin(), table.modes.end(),
                  [](const ModeRecord &a, const ModeRecord &b)
                  { return a.n_eff > b.n_eff; });

        const double h = options.fd_step_um;
        for_each_index(options.exec, table.modes.size(), [&](std::size_t k)
                       {
            auto &mode = table.modes[k];
            const auto full = probe(profile, mode.id.l, mode.n_eff, lambda_um, h);
            mode.tau_ps_per_km = tau_from(full, lambda_um, h);
            mode.dispersion_ps_per_km_nm = dispersion_from(full, lambda_um, h);
            if (!options.check_convergence)
                return;
            const auto half = probe(profile, mode.id.l, mode.n_eff, lambda_um, 0.5 * h);
            const double dtau = std::abs(tau_from(half, lambda_um, 0.5 * h) - mode.tau_ps_per_km);
            const double dd = std::abs(dispersion_from(half, lambda_um, 0.5 * h) - mode.dispersion_ps_per_km_nm);
            if (!(dtau < 0.1) || !(dd < 0.05))
                throw ConvergenceError(to_string(mode.id) + ": finite-difference estimates did not converge "
                                       "(half-step change: tau " + std::to_string(dtau) + " ps/km, D " +
                                       std::to_string(dd) + " ps/(km nm))"); });
        return table;
    }

    double group_delay(const FiberProfile &profile, ModeId id, double lambda0_um, double fd_step_um)
    {
        const double n0 = neff_of(profile, id, lambda0_um);
        return tau_from(probe(profile, id.l, n0, lambda0_um, fd_step_um), lambda0_um, fd_step_um);
    }

    double dispersion(const FiberProfile &profile, ModeId id, double lambda0_um, double fd_step_um)
    {
        const double n0 = neff_of(profile, id, lambda0_um);
        return dispersion_from(probe(profile, id.l, n0, lambda0_um, fd_step_um), lambda0_um, fd_step_um);
    }

    std::vector<double> wavelength_grid_nm(double start_nm, double stop_nm, double step_nm)
    {
        if (!(step_nm > 0.0))
            throw DomainError("wavelength step must be > 0");
        if (!(start_nm <= stop_nm))
            throw DomainError("wavelength range start must not exceed stop");
        const auto count = static_cast<std::size_t>(std::floor((stop_nm - start_nm) / step_nm + 1e-9)) + 1;
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = start_nm + static_cast<double>(i) * step_nm;
        return grid;
    }

    ModeSweep sweep_modes(const FiberProfile &profile, double start_nm, double stop_nm, double step_nm,
                          const SolverOptions &options)
    {
        const auto grid = wavelength_grid_nm(start_nm, stop_nm, step_nm);
        ModeSweep sweep;
        sweep.tables.resize(grid.size());

        auto inner = options;
        inner.exec = Exec::serial;
        for_each_index(options.exec, grid.size(), [&](std::size_t k)
                       { sweep.tables[k] = find_modes(profile, grid[k] / 1000.0, inner); });

        // Relabel by nearest-n_eff continuation from the previous step.
        for (std::size_t k = 1; k < sweep.tables.size(); ++k)
        {
            const auto &previous = sweep.tables[k - 1];
            auto raw = std::move(sweep.tables[k].modes);
            std::vector<bool> used(raw.size(), false);
            std::vector<ModeRecord> relabeled;

            for (const auto &p : previous.modes)
            {
                std::optional<std::size_t> best;
                for (std::size_t c = 0; c < raw.size(); ++c)
                    if (!used[c] && raw[c].id.l == p.id.l &&
                        (!best || std::abs(raw[c].n_eff - p.n_eff) < std::abs(raw[*best].n_eff - p.n_eff)))
                        best = c;
                if (!best)
                {
                    sweep.warnings.push_back({p.id, grid[k], "mode reached cutoff and was dropped"});
                    continue;
                }
                used[*best] = true;
                auto record = raw[*best];
                record.id = p.id;
                relabeled.push_back(record);
            }
            for (std::size_t c = 0; c < raw.size(); ++c)
            {
                if (used[c])
                    continue;
                auto record = raw[c];
                int m = 0;
                for (const auto &r : relabeled)
                    if (r.id.l == record.id.l)
                        m = std::max(m, r.id.m);
                record.id.m = std::max(record.id.m, m + 1);
                sweep.warnings.push_back({record.id, grid[k], "mode appeared during the sweep"});
                relabeled.push_back(record);
            }
            std::sort(relabeled.begin(), relabeled.end(),
                      [](const ModeRecord &a, const ModeRecord &b)
                      { return a.n_eff > b.n_eff; });
            sweep.tables[k].modes = std::move(relabeled);
        }
        return sweep;
    }
}
