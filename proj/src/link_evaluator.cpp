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

#include "fmf/link_evaluator.hpp"

#include "fmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fmf
{
    std::string to_string(DelayModel model)
    {
        return model == DelayModel::first_order ? "first-order" : "numeric-sweep";
    }

    std::vector<double> differential_delays(std::span<const double> sample_delays)
    {
        std::vector<double> out;
        for (std::size_t i = 0; i + 1 < sample_delays.size(); ++i)
            out.push_back(sample_delays[i + 1] - sample_delays[i]);
        return out;
    }

    std::vector<double> sample_delays_first_order(const PlacementSolution &solution, double lambda_nm)
    {
        const double offset_nm = lambda_nm - solution.lambda0_um * 1000.0;
        std::vector<double> out(solution.tau_eq.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = solution.tau_eq[i] + offset_nm * solution.dispersion_eq[i];
        return out;
    }

    namespace
    {
        std::vector<double> path_delays(const PlacementSolution &solution, const ConversionGraph &graph,
                                        const ModeTable &table, double reference_tau)
        {
            std::vector<double> out;
            for (const auto &sample : graph.samples)
            {
                double tau = 0.0;
                for (const auto &segment : sample.segments)
                {
                    const auto *mode = table.find(segment.mode);
                    if (!mode)
                        throw ContinuationError(to_string(segment.mode) + " is not guided at " +
                                                std::to_string(table.lambda0_um * 1000.0) + " nm");
                    const double length = segment.is_variable() ? solution.value(segment.variable) : segment.fixed_length;
                    tau += (mode->tau_ps_per_km - reference_tau) * length;
                }
                out.push_back(tau);
            }
            return out;
        }
    }

    std::vector<double> sample_delays_numeric(const PlacementSolution &solution, const ConversionGraph &graph,
                                              const FiberProfile &profile, double lambda_nm,
                                              const SolverOptions &options)
    {
        const auto design = find_modes(profile, solution.lambda0_um, options);
        const double reference_tau = design.at(solution.reference).tau_ps_per_km;
        const auto table = find_modes(profile, lambda_nm / 1000.0, options);
        return path_delays(solution, graph, table, reference_tau);
    }

    DelayCurve delay_curve_first_order(const PlacementSolution &solution, std::span<const double> wavelengths_nm,
                                       Exec exec)
    {
        DelayCurve curve;
        curve.model = DelayModel::first_order;
        curve.wavelengths_nm.assign(wavelengths_nm.begin(), wavelengths_nm.end());
        curve.sample_delays.resize(wavelengths_nm.size());
        curve.differential.resize(wavelengths_nm.size());
        for_each_index(exec, wavelengths_nm.size(), [&](std::size_t k)
                       {
            curve.sample_delays[k] = sample_delays_first_order(solution, wavelengths_nm[k]);
            curve.differential[k] = differential_delays(curve.sample_delays[k]); });
        return curve;
    }

    DelayCurve delay_curve_numeric(const PlacementSolution &solution, const ConversionGraph &graph,
                                   const FiberProfile &profile, std::span<const double> wavelengths_nm,
                                   const SolverOptions &options)
    {
        DelayCurve curve;
        curve.model = DelayModel::numeric_sweep;
        curve.wavelengths_nm.assign(wavelengths_nm.begin(), wavelengths_nm.end());
        curve.sample_delays.resize(wavelengths_nm.size());
        curve.differential.resize(wavelengths_nm.size());

        auto inner = options;
        inner.exec = Exec::serial;
        const auto design = find_modes(profile, solution.lambda0_um, inner);
        const double reference_tau = design.at(solution.reference).tau_ps_per_km;
        for_each_index(options.exec, wavelengths_nm.size(), [&](std::size_t k)
                       {
            const auto table = find_modes(profile, wavelengths_nm[k] / 1000.0, inner);
            curve.sample_delays[k] = path_delays(solution, graph, table, reference_tau);
            curve.differential[k] = differential_delays(curve.sample_delays[k]); });
        return curve;
    }

    TunabilityReport tunability_report(const PlacementSolution &solution, double start_nm, double stop_nm,
                                       double lpg_bandwidth_nm)
    {
        if (!(start_nm <= stop_nm))
            throw DomainError("tunability range start must not exceed stop");
        TunabilityReport report;
        report.lambda_start_nm = start_nm;
        report.lambda_stop_nm = stop_nm;
        report.slope = solution.delta_d;

        const auto lo = differential_delays(sample_delays_first_order(solution, start_nm));
        const auto hi = differential_delays(sample_delays_first_order(solution, stop_nm));
        if (lo.empty())
            throw DomainError("tunability needs at least two samples");
        report.min_delta_tau = std::min(*std::min_element(lo.begin(), lo.end()), *std::min_element(hi.begin(), hi.end()));
        report.max_delta_tau = std::max(*std::max_element(lo.begin(), lo.end()), *std::max_element(hi.begin(), hi.end()));

        const double centre = solution.lambda0_um * 1000.0;
        const double half = 0.5 * lpg_bandwidth_nm;
        if (start_nm < centre - half - 1e-9 || stop_nm > centre + half + 1e-9)
        {
            report.outside_bandwidth = true;
            std::ostringstream os;
            os << "range " << start_nm << "-" << stop_nm << " nm exceeds the LPG bandwidth "
               << centre - half << "-" << centre + half << " nm";
            report.warning = os.str();
        }
        return report;
    }

    double RfResponse::magnitude_db(std::size_t k) const
    {
        return 20.0 * std::log10(std::abs(response[k]));
    }

    std::vector<double> tap_delays_ps(const PlacementSolution &solution, double lambda_nm, double length_km)
    {
        if (!(length_km > 0.0))
            throw DomainError("fiber length must be > 0");
        auto taus = sample_delays_first_order(solution, lambda_nm);
        for (auto &t : taus)
            t *= length_km;
        return taus;
    }

    RfResponse rf_response(std::span<const double> tap_delays, std::span<const double> amplitudes,
                           std::span<const double> frequencies_ghz, Exec exec)
    {
        if (tap_delays.size() < 2)
            throw DegenerateFilterError("an FIR response needs at least two taps");
        if (amplitudes.size() != tap_delays.size())
            throw DomainError("tap amplitude count does not match tap delay count");
        for (std::size_t i = 0; i < tap_delays.size(); ++i)
        {
            if (!(amplitudes[i] >= 0.0))
                throw DomainError("tap amplitudes must be >= 0");
            if (i > 0 && !(tap_delays[i] >= tap_delays[i - 1]))
                throw DomainError("tap delays must be sorted ascending");
        }

        RfResponse out;
        out.frequencies_ghz.assign(frequencies_ghz.begin(), frequencies_ghz.end());
        out.tap_delays_ps.assign(tap_delays.begin(), tap_delays.end());
        out.amplitudes.assign(amplitudes.begin(), amplitudes.end());
        out.response.resize(frequencies_ghz.size());

        for_each_index(exec, frequencies_ghz.size(), [&](std::size_t k)
                       {
            std::complex<double> h = 0.0;
            for (std::size_t i = 0; i < tap_delays.size(); ++i)
            {
                // GHz * ps = 1e-3 cycles
                const double phase = -2.0 * std::numbers::pi * frequencies_ghz[k] * tap_delays[i] * 1e-3;
                h += amplitudes[i] * std::polar(1.0, phase);
            }
            out.response[k] = h; });

        const std::size_t n = tap_delays.size();
        const double spacing = (tap_delays[n - 1] - tap_delays[0]) / static_cast<double>(n - 1);
        bool uniform = spacing > 0.0;
        for (std::size_t i = 1; uniform && i < n; ++i)
            uniform = std::abs((tap_delays[i] - tap_delays[i - 1]) - spacing) <= 1e-6 * spacing;
        if (uniform)
            out.fsr_ghz = 1e3 / spacing;
        return out;
    }
}
