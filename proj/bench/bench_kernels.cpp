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

// Serial reference vs OpenMP kernels.

#include "fmf/io.hpp"
#include "fmf/link_evaluator.hpp"
#include "fmf/mode_solver.hpp"
#include "fmf/ttdl_designer.hpp"

#include <benchmark/benchmark.h>

namespace
{
    const std::string kData = FMF_DATA_DIR;

    fmf::Exec exec_of(const benchmark::State &state) { return state.range(0) ? fmf::Exec::parallel : fmf::Exec::serial; }

    void BM_ScanCharacteristic(benchmark::State &state)
    {
        const auto profile = fmf::io::load_profile(kData + "/ring_core.prof");
        const double lo = profile.cladding_index(1.55) + 1e-7;
        const double hi = profile.max_index(1.55) - 1e-7;
        std::vector<double> grid(2000);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        for (auto _ : state)
            benchmark::DoNotOptimize(fmf::scan_characteristic(profile, 1, 1.55, grid, exec_of(state)));
    }
    BENCHMARK(BM_ScanCharacteristic)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

    void BM_FindModes(benchmark::State &state)
    {
        const auto profile = fmf::io::load_profile(kData + "/ring_core.prof");
        fmf::SolverOptions options;
        options.exec = exec_of(state);
        for (auto _ : state)
            benchmark::DoNotOptimize(fmf::find_modes(profile, 1.55, options));
    }
    BENCHMARK(BM_FindModes)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

    void BM_RfResponse(benchmark::State &state)
    {
        const std::vector<double> taps{7882.33, 7982.33, 8082.33, 8182.33};
        const std::vector<double> amplitudes(taps.size(), 1.0);
        const auto freqs = fmf::wavelength_grid_nm(0.0, 20.0, 0.0001);
        for (auto _ : state)
            benchmark::DoNotOptimize(fmf::rf_response(taps, amplitudes, freqs, exec_of(state)));
    }
    BENCHMARK(BM_RfResponse)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

    void BM_PerturbAndRedesign(benchmark::State &state)
    {
        const auto table = fmf::io::load_mode_table(kData + "/reference_modes.csv");
        const auto graph = fmf::io::load_graph(kData + "/ring_core_topology.graph");
        fmf::DesignTargets targets;
        for (auto _ : state)
            benchmark::DoNotOptimize(fmf::perturb_and_redesign(graph, table, targets, {0.01, 50, 1}, exec_of(state)));
    }
    BENCHMARK(BM_PerturbAndRedesign)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
}

BENCHMARK_MAIN();
