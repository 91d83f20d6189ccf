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

#include "fixtures.hpp"
#include "fmf/error.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Approx;
using namespace fmf;

namespace
{
    // First three samples of the topology: two free lengths after elimination.
    const char *kThreeSamples = R"(
[sample 1]
segment = LP02, l02
segment = LP12, l12_1
[sample 2]
segment = LP02, l02
segment = LP12, l12_2
segment = LP01, l01_2
segment = LP41, l41_2
[sample 3]
segment = LP02, l02
segment = LP12, l12_3
segment = LP11, l11_3
segment = LP31, l31_3
)";

    // Two samples with one free length.
    const char *kTwoSamples = R"(
[sample 1]
segment = LP02, a
segment = LP12, b
[sample 2]
segment = LP02, a
segment = LP11, c
segment = LP31, d
)";
}

TEST_CASE("Placements for the four-sample topology")
{
    const auto s = fixture::design();
    // Hand elimination of the four-sample system gives these to three decimals.
    const std::vector<std::pair<const char *, double>> expected{
        {"l02", 0.170}, {"l41_2", 0.239}, {"l01_2", 0.217}, {"l12_2", 0.373},
        {"l31_3", 0.385}, {"l11_3", 0.255}, {"l12_3", 0.190}, {"l12_1", 0.830}};
    for (const auto &[name, value] : expected)
    {
        CAPTURE(name);
        CHECK(s.value(name) == Approx(value).margin(1e-3));
    }
    CHECK_THROWS_AS(s.value("nope"), LookupError);
    CHECK(s.delta_d == Approx(5.10227).margin(1e-5));
    CHECK(s.delta_tau == Approx(100.0).margin(1e-9));
    const std::vector<double> tau{7882.33, 7982.33, 8082.33, 8182.33};
    const std::vector<double> d{12.1032, 17.2055, 22.3077, 27.41};
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(s.tau_eq[i] == Approx(tau[i]).margin(1e-6));
        CHECK(s.dispersion_eq[i] == Approx(d[i]).margin(1e-4));
    }
    CHECK(s.max_residual < 1e-12);
    CHECK(s.rule == DispersionRule::maximize);
    CHECK(s.reference == ModeId{0, 1});
}

TEST_CASE("Equivalent delays recomputed from the path definitions")
{
    const auto s = fixture::design();
    const auto table = fixture::table();
    const auto graph = fixture::topology();
    for (std::size_t i = 0; i < graph.samples.size(); ++i)
    {
        double tau = 0.0, d = 0.0, total = 0.0;
        for (const auto &seg : graph.samples[i].segments)
        {
            const double len = seg.is_variable() ? s.value(seg.variable) : seg.fixed_length;
            tau += len * table.at(seg.mode).tau_ps_per_km;
            d += len * table.at(seg.mode).dispersion_ps_per_km_nm;
            total += len;
        }
        CHECK(total == Approx(1.0).margin(1e-12));
        CHECK(tau == Approx(s.tau_eq[i]).margin(1e-8));
        CHECK(d == Approx(s.dispersion_eq[i]).margin(1e-10));
    }
}

TEST_CASE("Constraint system layout")
{
    const auto sys = assemble_constraints(fixture::topology(), fixture::table(), {});
    CHECK(sys.columns.size() == 9);
    CHECK(sys.columns.back() == "dD");
    CHECK(sys.has_delta_d_column);
    CHECK(sys.num_length_variables() == 8);
    CHECK(sys.rows.size() == 9);
    CHECK(sys.row_labels.front() == "normalization sample 1");
    for (const auto &row : sys.rows)
    {
        double m = 0.0;
        for (const double v : row)
            m = std::max(m, std::abs(v));
        CHECK(m == Approx(1.0));
    }
    CHECK(sys.lower.back() == -kInf);
    CHECK(sys.objective.back() == 1.0);
    CHECK(sys.sample_delay.size() == 4);

    DesignTargets delays_only;
    delays_only.rule = DispersionRule::delays_only;
    const auto d = assemble_constraints(fixture::topology(), fixture::table(), delays_only);
    CHECK_FALSE(d.has_delta_d_column);
    CHECK(d.rows.size() == 6);
}

TEST_CASE("Placements match an exhaustive grid search on reduced systems")
{
    const auto base = fixture::table();
    for (const auto *text : {kTwoSamples, kThreeSamples})
    {
        const auto graph = fixture::graph(text);
        int compared = 0;
        for (int trial = 0; trial < 6; ++trial)
        {
            const auto table = trial == 0 ? base : perturb_table(base, {0, 1}, 0.05, 7, trial);
            const auto grid = oracle::grid_search(graph, table, 100.0);
            REQUIRE(grid.free_variables <= 2);
            const auto result = solve_placements(assemble_constraints(graph, table, {}));
            CAPTURE(trial, grid.free_variables);
            if (!grid.feasible)
            {
                CHECK_FALSE(result.ok());
                continue;
            }
            REQUIRE(result.ok());
            CHECK(result.solution->delta_d >= grid.delta_d - 1e-9);
            CHECK(result.solution->delta_d - grid.delta_d < 2e-3);
            ++compared;
        }
        CHECK(compared >= 3);
    }
}

TEST_CASE("Dispersion rules")
{
    DesignTargets fixed;
    fixed.rule = DispersionRule::fixed;
    fixed.fixed_delta_d = 5.0;
    const auto g = fixture::graph(kThreeSamples);
    const auto r = solve_placements(assemble_constraints(g, fixture::table(), fixed));
    REQUIRE(r.ok());
    CHECK(r.solution->delta_d == Approx(5.0).margin(1e-9));
    CHECK(r.solution->dispersion_eq[2] - r.solution->dispersion_eq[1] == Approx(5.0).margin(1e-9));

    DesignTargets delays_only;
    delays_only.rule = DispersionRule::delays_only;
    const auto d = solve_placements(assemble_constraints(g, fixture::table(), delays_only));
    REQUIRE(d.ok());
    CHECK(d.solution->tau_eq[1] - d.solution->tau_eq[0] == Approx(100.0).margin(1e-8));
    CHECK(to_string(DispersionRule::delays_only) == "delays-only");
}

TEST_CASE("Unreachable targets are reported with the offending constraints")
{
    DesignTargets t;
    t.delta_tau_ps_per_km = 9000.0;
    const auto r = solve_placements(assemble_constraints(fixture::topology(), fixture::table(), t));
    CHECK_FALSE(r.ok());
    CHECK(r.status == LpStatus::infeasible);
    CHECK_FALSE(r.violated_constraints.empty());
    CHECK(r.message.find("infeasible") != std::string::npos);

    t.delta_tau_ps_per_km = -1.0;
    CHECK_THROWS_AS(assemble_constraints(fixture::topology(), fixture::table(), t), DomainError);
}

TEST_CASE("Samples without free lengths must already be normalised")
{
    const auto g = fixture::graph("[sample 1]\nsegment = LP02, a\nsegment = LP12, b\n[sample 2]\nsegment = LP21, 0.5\n");
    CHECK_THROWS_AS(assemble_constraints(g, fixture::table(), {}), InfeasibleConstantError);
}

TEST_CASE("Modes missing from the table")
{
    auto table = fixture::table();
    table.modes.erase(table.modes.begin() + 3); // LP31
    CHECK_THROWS_AS(assemble_constraints(fixture::topology(), table, {}), LookupError);
}

TEST_CASE("Graph validation")
{
    ConversionGraph empty;
    CHECK_THROWS_AS(empty.validate(), DomainError);

    ConversionGraph repeated{{SamplePath{{{{0, 2}, "a"}, {{0, 2}, "b"}}}}};
    CHECK_THROWS_AS(repeated.validate(), DomainError);

    ConversionGraph twice{{SamplePath{{{{0, 2}, "a"}, {{1, 2}, "a"}}}}};
    CHECK_THROWS_AS(twice.validate(), DomainError);

    // A shared name must denote the same upstream stretch in every sample.
    ConversionGraph not_prefix{{SamplePath{{{{0, 2}, "a"}, {{1, 2}, "b"}}},
                                SamplePath{{{{1, 1}, "c"}, {{1, 2}, "b"}}}}};
    CHECK_THROWS_AS(not_prefix.validate(), DomainError);

    ConversionGraph bad_len{{SamplePath{{{{0, 2}, "", 1.5}}}}};
    CHECK_THROWS_AS(bad_len.validate(), DomainError);

    CHECK_NOTHROW(fixture::topology().validate());
    CHECK(fixture::topology().variables().size() == 8);
    CHECK(fixture::topology().variables().front() == "l02");
}

TEST_CASE("Grating positions")
{
    const auto s = fixture::design();
    const auto positions = lpg_positions(s, fixture::topology(), 2.0);
    REQUIRE(positions.size() == 5);
    CHECK(positions[0].junction == "J1");
    CHECK(positions[0].from == ModeId{0, 2});
    CHECK(positions[0].to == ModeId{1, 2});
    CHECK(positions[0].z_km == Approx(2.0 * s.value("l02")));
    for (std::size_t k = 1; k < positions.size(); ++k)
        CHECK(positions[k].z_km >= positions[k - 1].z_km);
    // LP01 -> LP41 sits l41_2 before the fiber end.
    const auto it = std::find_if(positions.begin(), positions.end(), [](const auto &p) { return p.to == ModeId{4, 1}; });
    REQUIRE(it != positions.end());
    CHECK(it->z_km == Approx(2.0 * (1.0 - s.value("l41_2"))));
    CHECK_THROWS_AS(lpg_positions(s, fixture::topology(), 0.0), DomainError);
}

TEST_CASE("Perturbed tables keep the reference mode at zero")
{
    const auto base = fixture::table();
    const auto p = perturb_table(base, {0, 1}, 0.01, 3, 4);
    CHECK(p.at({0, 1}).tau_ps_per_km == 0.0);
    CHECK(p.at({2, 1}).tau_ps_per_km != base.at({2, 1}).tau_ps_per_km);
    CHECK(p.at({2, 1}).tau_ps_per_km == Approx(base.at({2, 1}).tau_ps_per_km).epsilon(0.06));
    const auto q = perturb_table(base, {0, 1}, 0.01, 3, 4);
    CHECK(q.at({2, 1}).tau_ps_per_km == p.at({2, 1}).tau_ps_per_km);
    const auto flat = perturb_table(base, {0, 1}, 0.0, 3, 4);
    for (std::size_t k = 0; k < base.modes.size(); ++k)
        CHECK(flat.modes[k].dispersion_ps_per_km_nm == base.modes[k].dispersion_ps_per_km_nm);
}

TEST_CASE("Redesign under perturbed mode data")
{
    const auto graph = fixture::topology();
    const auto table = fixture::table();
    const auto none = perturb_and_redesign(graph, table, {}, {0.0, 5, 1});
    CHECK(none.feasible_fraction == 1.0);
    for (const auto &t : none.trials)
        CHECK(t.max_abs_dl < 1e-12);

    const auto report = perturb_and_redesign(graph, table, {}, {0.01, 100, 1});
    CHECK(report.trials.size() == 100);
    CHECK(report.nominal.delta_d == Approx(5.10227).margin(1e-5));
    // Frozen regression values for seed 1.
    CHECK(report.feasible_fraction == Approx(1.0));
    CHECK(report.median_max_abs_dl == Approx(0.02146441684396277).epsilon(1e-9));
    CHECK(report.delta_d_mean == Approx(5.105165409301247).epsilon(1e-9));

    CHECK_THROWS_AS(perturb_and_redesign(graph, table, {}, {-0.1, 5, 1}), DomainError);
    CHECK_THROWS_AS(perturb_and_redesign(graph, table, {}, {0.01, 0, 1}), DomainError);
}
