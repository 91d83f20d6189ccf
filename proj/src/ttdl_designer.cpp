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

#include "fmf/ttdl_designer.hpp"

#include "fmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace fmf
{
    namespace
    {
        bool same_segment(const Segment &a, const Segment &b)
        {
            return a.mode == b.mode && a.variable == b.variable && (a.is_variable() || a.fixed_length == b.fixed_length);
        }

        std::size_t column_of(const std::vector<std::string> &columns, const std::string &name)
        {
            const auto it = std::find(columns.begin(), columns.end(), name);
            return static_cast<std::size_t>(it - columns.begin());
        }

        std::string pair_label(const char *what, std::size_t i)
        {
            return std::string(what) + " samples " + std::to_string(i + 1) + "-" + std::to_string(i + 2);
        }
    }

    std::string to_string(DispersionRule rule)
    {
        switch (rule)
        {
        case DispersionRule::maximize:
            return "maximize";
        case DispersionRule::fixed:
            return "fixed";
        case DispersionRule::delays_only:
        default:
            return "delays-only";
        }
    }

    std::vector<std::string> ConversionGraph::variables() const
    {
        std::vector<std::string> out;
        for (const auto &sample : samples)
            for (const auto &segment : sample.segments)
                if (segment.is_variable() && std::find(out.begin(), out.end(), segment.variable) == out.end())
                    out.push_back(segment.variable);
        return out;
    }

    void ConversionGraph::validate() const
    {
        if (samples.empty())
            throw DomainError("conversion graph has no samples");

        struct FirstUse
        {
            std::size_t sample, index;
        };
        std::map<std::string, FirstUse> first_use;

        for (std::size_t s = 0; s < samples.size(); ++s)
        {
            const auto &segments = samples[s].segments;
            const std::string where = "sample " + std::to_string(s + 1);
            if (segments.empty())
                throw DomainError(where + " has no segments");
            for (std::size_t k = 0; k < segments.size(); ++k)
            {
                const auto &segment = segments[k];
                if (!segment.is_variable() && !(segment.fixed_length >= 0.0 && segment.fixed_length <= 1.0))
                    throw DomainError(where + ": fixed segment length must lie in [0, 1]");
                if (k > 0 && segments[k - 1].mode == segment.mode)
                    throw DomainError(where + ": consecutive segments share mode " + to_string(segment.mode) +
                                      " (a junction must convert between distinct modes)");
                if (!segment.is_variable())
                    continue;
                for (std::size_t q = 0; q < k; ++q)
                    if (segments[q].variable == segment.variable)
                        throw DomainError(where + ": variable '" + segment.variable + "' used twice in one path");

                const auto [it, inserted] = first_use.try_emplace(segment.variable, FirstUse{s, k});
                if (inserted)
                    continue;
                const auto &other = samples[it->second.sample].segments;
                bool shared_prefix = it->second.index == k;
                for (std::size_t q = 0; shared_prefix && q <= k; ++q)
                    shared_prefix = same_segment(other[q], segments[q]);
                if (!shared_prefix)
                    throw DomainError(where + ": shared variable '" + segment.variable +
                                      "' must be the same upstream segment (same mode and prefix) in every sample");
            }
        }
    }

    double AffineForm::operator()(const std::vector<double> &x) const
    {
        double v = constant;
        for (std::size_t j = 0; j < coefficients.size() && j < x.size(); ++j)
            v += coefficients[j] * x[j];
        return v;
    }

    ConstraintSystem assemble_constraints(const ConversionGraph &graph, const ModeTable &table,
                                          const DesignTargets &targets)
    {
        graph.validate();
        if (!(targets.delta_tau_ps_per_km > 0.0))
            throw DomainError("target differential delay must be > 0");

        const auto &reference = table.at(targets.reference);
        ConstraintSystem sys;
        sys.targets = targets;
        sys.reference_tau_ps_per_km = reference.tau_ps_per_km;

        const auto vars = graph.variables();
        const std::size_t n_samples = graph.samples.size();
        sys.columns = vars;
        sys.has_delta_d_column = targets.rule == DispersionRule::maximize && n_samples >= 2 && !vars.empty();
        if (sys.has_delta_d_column)
            sys.columns.push_back("dD");
        const std::size_t n = sys.columns.size();

        std::vector<AffineForm> lengths(n_samples);
        sys.sample_delay.resize(n_samples);
        sys.sample_dispersion.resize(n_samples);
        for (std::size_t s = 0; s < n_samples; ++s)
        {
            for (auto *form : {&lengths[s], &sys.sample_delay[s], &sys.sample_dispersion[s]})
                form->coefficients.assign(n, 0.0);
            for (const auto &segment : graph.samples[s].segments)
            {
                const auto &mode = table.at(segment.mode);
                const double tau = mode.tau_ps_per_km - reference.tau_ps_per_km;
                const double d = mode.dispersion_ps_per_km_nm;
                if (segment.is_variable())
                {
                    const auto j = column_of(sys.columns, segment.variable);
                    lengths[s].coefficients[j] += 1.0;
                    sys.sample_delay[s].coefficients[j] += tau;
                    sys.sample_dispersion[s].coefficients[j] += d;
                }
                else
                {
                    lengths[s].constant += segment.fixed_length;
                    sys.sample_delay[s].constant += tau * segment.fixed_length;
                    sys.sample_dispersion[s].constant += d * segment.fixed_length;
                }
            }
        }

        auto add_row = [&](std::vector<double> row, double rhs, std::string label)
        {
            double scale = 0.0;
            for (const double v : row)
                scale = std::max(scale, std::abs(v));
            if (scale == 0.0)
                scale = 1.0;
            for (auto &v : row)
                v /= scale;
            sys.rows.push_back(std::move(row));
            sys.rhs.push_back(rhs / scale);
            sys.row_scale.push_back(scale);
            sys.row_labels.push_back(std::move(label));
        };

        for (std::size_t s = 0; s < n_samples; ++s)
        {
            const bool has_vars = std::any_of(lengths[s].coefficients.begin(), lengths[s].coefficients.end(),
                                              [](double c)
                                              { return c != 0.0; });
            if (!has_vars)
            {
                if (std::abs(lengths[s].constant - 1.0) > 1e-12)
                    throw InfeasibleConstantError("sample " + std::to_string(s + 1) +
                                                  " has no free lengths and its fixed lengths sum to " +
                                                  std::to_string(lengths[s].constant) + " instead of 1");
                continue;
            }
            add_row(lengths[s].coefficients, 1.0 - lengths[s].constant, "normalization sample " + std::to_string(s + 1));
        }

        for (std::size_t i = 0; i + 1 < n_samples; ++i)
        {
            const auto &a = sys.sample_delay[i];
            const auto &b = sys.sample_delay[i + 1];
            std::vector<double> row(n);
            for (std::size_t j = 0; j < n; ++j)
                row[j] = b.coefficients[j] - a.coefficients[j];
            add_row(std::move(row), targets.delta_tau_ps_per_km - (b.constant - a.constant), pair_label("delay increment", i));
        }

        if (targets.rule != DispersionRule::delays_only)
        {
            for (std::size_t i = 0; i + 1 < n_samples; ++i)
            {
                const auto &a = sys.sample_dispersion[i];
                const auto &b = sys.sample_dispersion[i + 1];
                std::vector<double> row(n);
                for (std::size_t j = 0; j < n; ++j)
                    row[j] = b.coefficients[j] - a.coefficients[j];
                double rhs = -(b.constant - a.constant);
                if (sys.has_delta_d_column)
                    row[n - 1] = -1.0;
                else if (targets.rule == DispersionRule::fixed)
                    rhs += targets.fixed_delta_d;
                else
                    continue; // maximize with nothing to vary: increments are reported, not constrained
                add_row(std::move(row), rhs, pair_label("dispersion increment", i));
            }
        }

        sys.lower.assign(n, 0.0);
        sys.upper.assign(n, 1.0);
        sys.objective.assign(n, 0.0);
        if (sys.has_delta_d_column)
        {
            sys.lower[n - 1] = -kInf;
            sys.upper[n - 1] = kInf;
            sys.objective[n - 1] = 1.0;
        }
        return sys;
    }

    double PlacementSolution::value(const std::string &name) const
    {
        for (std::size_t j = 0; j < variables.size(); ++j)
            if (variables[j] == name)
                return values[j];
        throw LookupError("unknown placement variable '" + name + "'");
    }

    PlacementResult solve_placements(const ConstraintSystem &system)
    {
        PlacementResult result;
        const std::size_t n = system.columns.size();

        LinearProgram lp;
        lp.num_vars = n;
        lp.rows = system.rows;
        lp.rhs = system.rhs;
        lp.lower = system.lower;
        lp.upper = system.upper;
        lp.objective = system.objective;

        std::vector<double> x;
        if (n == 0)
        {
            for (std::size_t i = 0; i < system.rows.size(); ++i)
                if (std::abs(system.rhs[i]) > 1e-10)
                    result.violated_constraints.push_back(system.row_labels[i]);
            result.status = result.violated_constraints.empty() ? LpStatus::optimal : LpStatus::infeasible;
        }
        else
        {
            const auto lp_result = solve_lp_lexicographic(lp, 1e-10);
            result.status = lp_result.status;
            for (const auto row : lp_result.violated_rows)
                result.violated_constraints.push_back(system.row_labels[row]);
            x = lp_result.x;
        }

        if (result.status == LpStatus::infeasible)
        {
            std::ostringstream os;
            os << "infeasible: no normalized lengths in [0, 1] satisfy";
            for (std::size_t i = 0; i < result.violated_constraints.size(); ++i)
                os << (i ? ", " : " ") << result.violated_constraints[i];
            result.message = os.str();
            return result;
        }
        if (result.status == LpStatus::unbounded)
        {
            result.message = "unbounded: the incremental dispersion can grow without limit (under-constrained graph)";
            return result;
        }

        const std::size_t n_len = system.num_length_variables();
        for (std::size_t j = 0; j < n_len; ++j)
            if (x[j] < 0.0 && x[j] > -1e-12)
                x[j] = 0.0;
            else if (x[j] > 1.0 && x[j] < 1.0 + 1e-12)
                x[j] = 1.0;

        PlacementSolution sol;
        sol.variables.assign(system.columns.begin(), system.columns.begin() + static_cast<std::ptrdiff_t>(n_len));
        sol.values.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_len));
        for (std::size_t s = 0; s < system.sample_delay.size(); ++s)
        {
            sol.tau_eq.push_back(system.sample_delay[s](x));
            sol.dispersion_eq.push_back(system.sample_dispersion[s](x));
        }
        const std::size_t ns = sol.tau_eq.size();
        if (ns >= 2)
        {
            sol.delta_tau = (sol.tau_eq.back() - sol.tau_eq.front()) / static_cast<double>(ns - 1);
            sol.delta_d = system.has_delta_d_column
                              ? x.back()
                              : (sol.dispersion_eq.back() - sol.dispersion_eq.front()) / static_cast<double>(ns - 1);
        }
        sol.lambda0_um = system.targets.lambda0_um;
        sol.reference = system.targets.reference;
        sol.reference_tau_ps_per_km = system.reference_tau_ps_per_km;
        sol.rule = system.targets.rule;
        for (std::size_t i = 0; i < system.rows.size(); ++i)
        {
            double r = -system.rhs[i];
            for (std::size_t j = 0; j < n; ++j)
                r += system.rows[i][j] * x[j];
            sol.max_residual = std::max(sol.max_residual, std::abs(r));
        }
        result.solution = std::move(sol);
        return result;
    }

    std::vector<LpgPosition> lpg_positions(const PlacementSolution &solution, const ConversionGraph &graph,
                                           double length_km)
    {
        if (!(length_km > 0.0))
            throw DomainError("fiber length must be > 0");

        auto length_of = [&](const Segment &segment)
        { return segment.is_variable() ? solution.value(segment.variable) : segment.fixed_length; };

        struct Found
        {
            const std::vector<Segment> *path;
            std::size_t index; // junction after segment `index`
            double z;
            std::size_t order;
        };
        std::vector<Found> found;

        for (const auto &sample : graph.samples)
        {
            const auto &segs = sample.segments;
            for (std::size_t k = 0; k + 1 < segs.size(); ++k)
            {
                bool duplicate = false;
                for (const auto &f : found)
                {
                    if (f.index != k || (*f.path)[k + 1].mode != segs[k + 1].mode)
                        continue;
                    bool same = true;
                    for (std::size_t q = 0; same && q <= k; ++q)
                        same = same_segment((*f.path)[q], segs[q]);
                    if (same)
                    {
                        duplicate = true;
                        break;
                    }
                }
                if (duplicate)
                    continue;
                double downstream = 0.0;
                for (std::size_t q = k + 1; q < segs.size(); ++q)
                    downstream += length_of(segs[q]);
                const double z = std::clamp(length_km - downstream * length_km, 0.0, length_km);
                found.push_back({&segs, k, z, found.size()});
            }
        }

        std::stable_sort(found.begin(), found.end(), [](const Found &a, const Found &b)
                         { return a.z < b.z; });
        std::vector<LpgPosition> out;
        for (std::size_t i = 0; i < found.size(); ++i)
        {
            const auto &f = found[i];
            out.push_back({"J" + std::to_string(i + 1), (*f.path)[f.index].mode, (*f.path)[f.index + 1].mode, f.z});
        }
        return out;
    }

    ModeTable perturb_table(const ModeTable &table, ModeId reference, double sigma, std::uint64_t seed, int trial)
    {
        const auto &ref = table.at(reference);
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);

        ModeTable out = table;
        for (auto &mode : out.modes)
        {
            const double z_tau = normal(rng);
            const double z_d = normal(rng);
            const double relative = mode.id == reference ? 0.0 : mode.tau_ps_per_km - ref.tau_ps_per_km;
            mode.tau_ps_per_km = relative * (1.0 + sigma * z_tau);
            mode.dispersion_ps_per_km_nm *= 1.0 + sigma * z_d;
        }
        return out;
    }

    RobustnessReport perturb_and_redesign(const ConversionGraph &graph, const ModeTable &table,
                                          const DesignTargets &targets, const PerturbationSpec &spec, Exec exec)
    {
        if (!(spec.sigma >= 0.0))
            throw DomainError("perturbation sigma must be >= 0");
        if (spec.trials < 1)
            throw DomainError("perturbation needs at least one trial");

        RobustnessReport report;
        const auto nominal = solve_placements(assemble_constraints(graph, table, targets));
        if (!nominal.ok())
            throw Error("nominal design failed: " + nominal.message);
        report.nominal = *nominal.solution;

        report.trials.resize(static_cast<std::size_t>(spec.trials));
        for_each_index(exec, report.trials.size(), [&](std::size_t t)
                       {
            auto &outcome = report.trials[t];
            outcome.trial = static_cast<int>(t);
            const auto perturbed = perturb_table(table, targets.reference, spec.sigma, spec.seed, static_cast<int>(t));
            const auto result = solve_placements(assemble_constraints(graph, perturbed, targets));
            outcome.feasible = result.ok();
            if (!outcome.feasible)
            {
                outcome.max_abs_dl = std::numeric_limits<double>::quiet_NaN();
                outcome.delta_d = std::numeric_limits<double>::quiet_NaN();
                return;
            }
            for (std::size_t j = 0; j < report.nominal.values.size(); ++j)
                outcome.max_abs_dl = std::max(outcome.max_abs_dl,
                                              std::abs(result.solution->values[j] - report.nominal.values[j]));
            outcome.delta_d = result.solution->delta_d; });

        std::vector<double> dl;
        double sum = 0.0, sum2 = 0.0;
        for (const auto &outcome : report.trials)
            if (outcome.feasible)
            {
                dl.push_back(outcome.max_abs_dl);
                sum += outcome.delta_d;
            }
        const auto k = static_cast<double>(dl.size());
        report.feasible_fraction = k / static_cast<double>(report.trials.size());
        if (dl.empty())
        {
            report.median_max_abs_dl = report.delta_d_mean = report.delta_d_stddev = std::numeric_limits<double>::quiet_NaN();
            return report;
        }
        std::sort(dl.begin(), dl.end());
        const std::size_t mid = dl.size() / 2;
        report.median_max_abs_dl = dl.size() % 2 ? dl[mid] : 0.5 * (dl[mid - 1] + dl[mid]);
        report.delta_d_mean = sum / k;
        for (const auto &outcome : report.trials)
            if (outcome.feasible)
                sum2 += (outcome.delta_d - report.delta_d_mean) * (outcome.delta_d - report.delta_d_mean);
        report.delta_d_stddev = dl.size() > 1 ? std::sqrt(sum2 / (k - 1.0)) : 0.0;
        return report;
    }
}
