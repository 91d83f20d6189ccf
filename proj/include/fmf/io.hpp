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

#ifndef FMF_IO_HPP
#define FMF_IO_HPP

#include "fmf/error.hpp"
#include "fmf/link_evaluator.hpp"
#include "fmf/materials.hpp"
#include "fmf/mode_solver.hpp"
#include "fmf/ttdl_designer.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fmf::io
{
    struct Diagnostic
    {
        std::string file;
        int line = 0; // 0 when not tied to a line
        std::string message;

        std::string to_string() const;
    };

    // Sorts by (file, line) and keeps insertion order for ties.
    void sort_diagnostics(std::vector<Diagnostic> &diagnostics);

    class ParseError : public Error
    {
    public:
        explicit ParseError(std::vector<Diagnostic> diagnostics);
        const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

    private:
        std::vector<Diagnostic> diagnostics_;
    };

    // Shortest decimal string that reads back to the same double.
    std::string format_number(double value);

    // Whole-string parse with std::from_chars; nullopt on trailing garbage.
    std::optional<double> parse_number(std::string_view text);

    // Profile file: `key = value` lines, `[layer]` sections with radius_um and
    // delta_percent, top-level name and material_model. '#' starts a comment.
    FiberProfile parse_profile(std::istream &in, const std::string &source);
    FiberProfile load_profile(const std::filesystem::path &path);

    // Graph file: `[sample N]` sections with ordered `segment = LPlm, <var|fixed|number>` lines.
    ConversionGraph parse_graph(std::istream &in, const std::string &source);
    ConversionGraph load_graph(const std::filesystem::path &path);

    inline constexpr std::string_view kModeTableHeader = "l,m,n_eff,tau_ps_per_km,D_ps_per_km_nm,lambda0_nm";

    void write_mode_table(std::ostream &out, const ModeTable &table, bool header = true);
    // One header, rows of every table in order (used for wavelength sweeps).
    void write_mode_tables(std::ostream &out, const std::vector<ModeTable> &tables);

    // Reads a mode table CSV; rows are grouped into one table per lambda0 in file order.
    std::vector<ModeTable> parse_mode_tables(std::istream &in, const std::string &source);
    // Exactly one wavelength required.
    ModeTable load_mode_table(const std::filesystem::path &path);

    void write_placements(std::ostream &out, const PlacementSolution &solution);
    PlacementSolution parse_placements(std::istream &in, const std::string &source);
    PlacementSolution load_placements(const std::filesystem::path &path);

    void write_lpg_positions(std::ostream &out, const std::vector<LpgPosition> &positions);
    void write_delay_curve(std::ostream &out, const DelayCurve &curve);
    void write_rf_response(std::ostream &out, const RfResponse &response);
    void write_robustness(std::ostream &out, const RobustnessReport &report);

    // Writes to a sibling temporary file and renames it into place, so a failed
    // run never leaves a truncated artifact.
    void write_file_atomic(const std::filesystem::path &path, std::string_view contents);
}

#endif
