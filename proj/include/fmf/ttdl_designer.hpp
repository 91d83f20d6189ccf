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

#ifndef FMF_TTDL_DESIGNER_HPP
#define FMF_TTDL_DESIGNER_HPP

#include "fmf/exec.hpp"
#include "fmf/linprog.hpp"
#include "fmf/mode_solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fmf
{
    /// One stretch of fiber travelled by a sample in a single mode.
    ///
    /// The normalized length is either a named variable (possibly shared with other
    /// samples as a common upstream segment) or a fixed constant.
    struct Segment
    {
        ModeId mode;
        std::string variable; // empty for fixed segments
        double fixed_length = 1.0;

        bool is_variable() const { return !variable.empty(); }
    };

    struct SamplePath
    {
        std::vector<Segment> segments;
    };

    /// Mode-conversion topology: per-sample ordered mode paths. Each junction between
    /// consecutive segments is one LPG conversion.
    struct ConversionGraph
    {
        std::vector<SamplePath> samples;

        // Variable names in order of first appearance.
        std::vector<std::string> variables() const;

        // Throws DomainError on an empty graph/sample, repeated consecutive modes, a shared
        // variable that is not a common upstream prefix, or a negative fixed length.
        void validate() const;
    };

    enum class DispersionRule
    {
        maximize,    // maximise the incremental dispersion
        fixed,       // incremental dispersion pinned to DesignTargets::fixed_delta_d
        delays_only  // no dispersion constraints
    };

    std::string to_string(DispersionRule rule);

    struct DesignTargets
    {
        double delta_tau_ps_per_km = 100.0;
        double lambda0_um = 1.55;
        DispersionRule rule = DispersionRule::maximize;
        double fixed_delta_d = 0.0; // ps/(km nm), used by DispersionRule::fixed
        ModeId reference{0, 1};     // delays are reported relative to this mode
    };

    // c . x + constant
    struct AffineForm
    {
        std::vector<double> coefficients;
        double constant = 0.0;

        double operator()(const std::vector<double> &x) const;
    };

    /// Linear equality system over the normalized lengths (and the incremental
    /// dispersion when it is maximised), with box bounds [0, 1] on lengths.
    struct ConstraintSystem
    {
        std::vector<std::string> columns; // length variables, then "dD" if present
        bool has_delta_d_column = false;
        std::vector<std::vector<double>> rows; // each row scaled to unit max coefficient
        std::vector<double> rhs;
        std::vector<double> row_scale; // factor that was divided out of each row
        std::vector<std::string> row_labels;
        std::vector<double> lower, upper, objective;

        // Per-sample equivalent delay (relative to the reference mode) and dispersion.
        std::vector<AffineForm> sample_delay;
        std::vector<AffineForm> sample_dispersion;

        DesignTargets targets;
        double reference_tau_ps_per_km = 0.0;

        std::size_t num_length_variables() const { return columns.size() - (has_delta_d_column ? 1 : 0); }
    };

    ConstraintSystem assemble_constraints(const ConversionGraph &graph, const ModeTable &table,
                                          const DesignTargets &targets);

    struct PlacementSolution
    {
        std::vector<std::string> variables;
        std::vector<double> values;
        std::vector<double> tau_eq;      // ps/km relative to the reference mode
        std::vector<double> dispersion_eq; // ps/(km nm)
        double delta_tau = 0.0;          // achieved mean increment
        double delta_d = 0.0;
        double lambda0_um = 1.55;
        ModeId reference{0, 1};
        double reference_tau_ps_per_km = 0.0;
        DispersionRule rule = DispersionRule::maximize;
        double max_residual = 0.0; // largest scaled equality residual

        double value(const std::string &name) const; // throws LookupError
    };

    struct PlacementResult
    {
        LpStatus status = LpStatus::infeasible;
        std::optional<PlacementSolution> solution;
        std::vector<std::string> violated_constraints;
        std::string message;

        bool ok() const { return status == LpStatus::optimal && solution.has_value(); }
    };

    PlacementResult solve_placements(const ConstraintSystem &system);

    struct LpgPosition
    {
        std::string junction;
        ModeId from;
        ModeId to;
        double z_km;
    };

    // Physical converter positions, z = L - (downstream normalized length) * L, merged across
    // samples that share the upstream path and sorted by z.
    std::vector<LpgPosition> lpg_positions(const PlacementSolution &solution, const ConversionGraph &graph,
                                           double length_km);

    struct PerturbationSpec
    {
        double sigma = 0.01; // relative standard deviation on each mode's relative delay and dispersion
        int trials = 100;
        std::uint64_t seed = 1;
    };

    struct TrialOutcome
    {
        int trial = 0;
        bool feasible = false;
        double max_abs_dl = 0.0; // largest |l - l_nominal| over variables
        double delta_d = 0.0;
    };

    struct RobustnessReport
    {
        PlacementSolution nominal;
        std::vector<TrialOutcome> trials;
        double feasible_fraction = 0.0;
        double median_max_abs_dl = 0.0;
        double delta_d_mean = 0.0;
        double delta_d_stddev = 0.0;
    };

    // Mode table with every relative delay and dispersion scaled by independent Gaussian
    // factors (1 + sigma z); the stream is derived from (seed, trial).
    ModeTable perturb_table(const ModeTable &table, ModeId reference, double sigma, std::uint64_t seed, int trial);

    // Throws Error if the nominal design is not solvable.
    RobustnessReport perturb_and_redesign(const ConversionGraph &graph, const ModeTable &table,
                                          const DesignTargets &targets, const PerturbationSpec &spec,
                                          Exec exec = Exec::parallel);
}

#endif
