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

#ifndef FMF_CLI_HPP
#define FMF_CLI_HPP

#include "fmf/exec.hpp"
#include "fmf/io.hpp"
#include "fmf/link_evaluator.hpp"
#include "fmf/ttdl_designer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fmf::cli
{
    enum class Command
    {
        solve_modes,
        design,
        evaluate,
        rf_response,
        perturb
    };

    std::string to_string(Command command);

    struct Range
    {
        double start = 0.0;
        double stop = 0.0;
        double step = 1.0;
    };

    // Parses "start:stop:step".
    std::optional<Range> parse_range(std::string_view text);

    struct RunConfig
    {
        Command command = Command::solve_modes;

        std::filesystem::path profile;
        std::filesystem::path modes;
        std::filesystem::path graph;
        std::filesystem::path placements;

        std::filesystem::path out_dir = ".";
        std::filesystem::path out; // primary artifact; empty means out_dir / default name

        std::optional<double> lambda_nm;   // solve-modes default 1550; rf-response default: design wavelength
        std::optional<Range> sweep_nm;     // solve-modes wavelength sweep
        Range range_nm{1540.0, 1560.0, 0.5}; // evaluate
        double delta_tau = 100.0;
        DispersionRule rule = DispersionRule::maximize;
        double fixed_delta_d = 0.0;
        ModeId reference{0, 1};
        double length_km = 1.0;
        double lpg_bandwidth_nm = 20.0;
        DelayModel model = DelayModel::first_order;
        std::vector<double> amplitudes;    // empty means equal taps
        Range freq_ghz{0.0, 20.0, 0.01};
        double sigma = 0.01;
        int trials = 100;
        std::uint64_t seed = 1;
        int scan_points = 2000;
        Exec exec = Exec::parallel;

        std::filesystem::path primary_output() const;
    };

    struct ParseOutcome
    {
        std::optional<RunConfig> config;
        std::vector<io::Diagnostic> diagnostics; // every validation failure, ordered by (file, line)
        std::string help;                        // set when --help was requested
    };

    // args excludes the program name. env_out_dir stands in for $FMF_TTDL_OUT.
    ParseOutcome parse_config(const std::vector<std::string> &args,
                              const std::optional<std::string> &env_out_dir = std::nullopt);

    // Runs the configured stage; returns the process exit status. Diagnostics go to err
    // prefixed with the stage name; nothing is left behind on failure.
    int run_pipeline(const RunConfig &config, std::ostream &out, std::ostream &err);

    // argv entry point used by the fmf-ttdl executable.
    int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
