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

// Shared fixtures: the transcribed mode table and the four-sample topology.

#ifndef FMF_TEST_FIXTURES_HPP
#define FMF_TEST_FIXTURES_HPP

#include "fmf/io.hpp"
#include "fmf/ttdl_designer.hpp"
#include "oracles.hpp"

#include <sstream>

namespace fixture
{
    inline fmf::ModeTable table() { return fmf::io::load_mode_table(oracle::kData + "/reference_modes.csv"); }

    inline fmf::ConversionGraph topology() { return fmf::io::load_graph(oracle::kData + "/ring_core_topology.graph"); }

    inline fmf::ConversionGraph graph(const std::string &text)
    {
        std::istringstream in(text);
        return fmf::io::parse_graph(in, "inline");
    }

    inline fmf::PlacementSolution design(double delta_tau = 100.0)
    {
        fmf::DesignTargets targets;
        targets.delta_tau_ps_per_km = delta_tau;
        const auto result = fmf::solve_placements(fmf::assemble_constraints(topology(), table(), targets));
        return *result.solution;
    }
}

#endif
