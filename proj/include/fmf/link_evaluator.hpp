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

#ifndef FMF_LINK_EVALUATOR_HPP
#define FMF_LINK_EVALUATOR_HPP

#include "fmf/exec.hpp"
#include "fmf/materials.hpp"
#include "fmf/mode_solver.hpp"
#include "fmf/ttdl_designer.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmf
{
    enum class DelayModel
    {
        first_order,  // tau_i(lambda) = tau_eq,i + (lambda - lambda0) D_eq,i
        numeric_sweep // per-wavelength mode solve
    };

    std::string to_string(DelayModel model);

    /// Per-sample delays per unit length (ps/km, relative to the reference mode at
    /// lambda0) over a wavelength grid, with differential delays between adjacent samples.
    struct DelayCurve
    {
        std::vector<double> wavelengths_nm;
        std::vector<std::vector<double>> sample_delays; // [wavelength][sample]
        std::vector<std::vector<double>> differential;  // [wavelength][pair]
        DelayModel model = DelayModel::first_order;
    };

    std::vector<double> differential_delays(std::span<const double> sample_delays);

    std::vector<double> sample_delays_first_order(const PlacementSolution &solution, double lambda_nm);

    // Delays from the mode solver at lambda, summed along each sample path with the solved
    // lengths. Referenced to the solver's reference-mode delay at the design wavelength.
    // Throws ContinuationError naming the mode if a path mode is not guided at lambda.
    std::vector<double> sample_delays_numeric(const PlacementSolution &solution, const ConversionGraph &graph,
                                              const FiberProfile &profile, double lambda_nm,
                                              const SolverOptions &options = {});

    DelayCurve delay_curve_first_order(const PlacementSolution &solution, std::span<const double> wavelengths_nm,
                                       Exec exec = Exec::parallel);

    DelayCurve delay_curve_numeric(const PlacementSolution &solution, const ConversionGraph &graph,
                                   const FiberProfile &profile, std::span<const double> wavelengths_nm,
                                   const SolverOptions &options = {});

    struct TunabilityReport
    {
        double lambda_start_nm = 0.0;
        double lambda_stop_nm = 0.0;
        double min_delta_tau = 0.0; // ps/km
        double max_delta_tau = 0.0;
        double slope = 0.0;         // d(delta tau)/d(lambda) = incremental dispersion, ps/(km nm)
        bool outside_bandwidth = false;
        std::string warning;
    };

    // Differential delays at the range endpoints under the first-order model. A range
    // leaving the LPG band (lpg_bandwidth_nm centred at lambda0) is flagged, not rejected.
    TunabilityReport tunability_report(const PlacementSolution &solution, double start_nm, double stop_nm,
                                       double lpg_bandwidth_nm = 20.0);

    struct RfResponse
    {
        std::vector<double> frequencies_ghz;
        std::vector<std::complex<double>> response;
        std::vector<double> tap_delays_ps;
        std::vector<double> amplitudes;
        std::optional<double> fsr_ghz; // present when the taps are uniformly spaced

        double magnitude_db(std::size_t k) const;
    };

    // Absolute tap delays tau_i(lambda) * L in ps for a link of length_km.
    std::vector<double> tap_delays_ps(const PlacementSolution &solution, double lambda_nm, double length_km);

    // H(f) = sum_i a_i exp(-j 2 pi f tau_i). Throws DegenerateFilterError for fewer than two taps.
    RfResponse rf_response(std::span<const double> tap_delays_ps, std::span<const double> amplitudes,
                           std::span<const double> frequencies_ghz, Exec exec = Exec::parallel);
}

#endif
