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

#ifndef FMF_MODE_SOLVER_HPP
#define FMF_MODE_SOLVER_HPP

#include "fmf/exec.hpp"
#include "fmf/materials.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fmf
{
    // Speed of light in vacuum, m/s.
    inline constexpr double kSpeedOfLight = 299792458.0;

    struct ModeId
    {
        int l = 0; // azimuthal order
        int m = 1; // radial order

        auto operator<=>(const ModeId &) const = default;
    };

    // "LP01" style label; orders >= 10 are written as "LP(12,3)".
    std::string to_string(ModeId id);

    // Accepts "LPlm" (single digits each) or "LP(l,m)".
    std::optional<ModeId> parse_mode_label(std::string_view label);

    struct ModeRecord
    {
        ModeId id;
        double n_eff = 0.0;
        double tau_ps_per_km = 0.0; // group delay per unit length
        double dispersion_ps_per_km_nm = 0.0;
        double lambda0_um = 0.0;
    };

    /// Guided LP modes at one wavelength, sorted by descending effective index.
    struct ModeTable
    {
        std::vector<ModeRecord> modes;
        std::string profile_name;
        double lambda0_um = 0.0;

        const ModeRecord *find(ModeId id) const;
        const ModeRecord &at(ModeId id) const; // throws LookupError

        // n_eff[k] - n_eff[k+1] for adjacent modes.
        std::vector<double> separations() const;
        double min_separation() const;
    };

    struct SolverOptions
    {
        int scan_points = 2000;
        // Upper bound on the bracket width; bisection always continues until the bracket
        // cannot shrink further, which the dispersion second difference needs.
        double root_tol = 1e-15;
        double edge_margin = 1e-7;  // kept clear of n_clad and n_max in the scan
        double fd_step_um = 5e-4;   // finite-difference wavelength step
        bool check_convergence = true;
        Exec exec = Exec::parallel;
    };

    /// Boundary-matching determinant of the scalar LP_l problem at a trial effective index.
    ///
    /// The radial field is carried outwards from the axis layer by layer (J/Y where the
    /// trial index is below the layer index, I/K above it) and matched to the decaying K_l
    /// cladding solution. Both the carried state and the cladding state are scaled to unit
    /// length, so the result is dimensionless, bounded by 1 in magnitude, continuous across
    /// the J/Y - I/K regime switch, and zero exactly at guided-mode effective indices.
    /// Throws DomainError unless n_clad < n_eff < n_max.
    double characteristic_value(const FiberProfile &profile, int l, double n_eff, double lambda_um);

    // Kernel: characteristic_value at each grid point.
    std::vector<double> scan_characteristic(const FiberProfile &profile, int l, double lambda_um,
                                            std::span<const double> n_eff_grid, Exec exec);

    // Guided effective indices for azimuthal order l, descending.
    std::vector<double> find_roots(const FiberProfile &profile, int l, double lambda_um,
                                   const SolverOptions &options = {});

    // Follows a root of order l to lambda starting from n_guess; returns the nearest root.
    // Throws ContinuationError if no root is found before the guided range is exhausted.
    double track_mode(const FiberProfile &profile, int l, double lambda_um, double n_guess);

    // All guided modes at lambda with effective index, group delay and dispersion.
    ModeTable find_modes(const FiberProfile &profile, double lambda_um, const SolverOptions &options = {});

    // Group delay per unit length in ps/km by central difference with step fd_step_um.
    double group_delay(const FiberProfile &profile, ModeId id, double lambda0_um, double fd_step_um = 5e-4);

    // Chromatic dispersion in ps/(km nm) by second central difference with step fd_step_um.
    double dispersion(const FiberProfile &profile, ModeId id, double lambda0_um, double fd_step_um = 5e-4);

    struct SweepWarning
    {
        ModeId id;
        double lambda_nm;
        std::string message;
    };

    struct ModeSweep
    {
        std::vector<ModeTable> tables;
        std::vector<SweepWarning> warnings;
    };

    // Wavelength grid start, start+step, ... <= stop (in nm).
    std::vector<double> wavelength_grid_nm(double start_nm, double stop_nm, double step_nm);

    // One table per wavelength; mode labels follow the first table by nearest-n_eff
    // continuation, and modes lost to cutoff are dropped with a warning.
    ModeSweep sweep_modes(const FiberProfile &profile, double start_nm, double stop_nm, double step_nm,
                          const SolverOptions &options = {});
}

#endif
