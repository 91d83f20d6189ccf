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

#ifndef FMF_LINPROG_HPP
#define FMF_LINPROG_HPP

#include <cstddef>
#include <limits>
#include <vector>

namespace fmf
{
    inline constexpr double kInf = std::numeric_limits<double>::infinity();

    // maximize objective . x  subject to  rows . x = rhs,  lower <= x <= upper.
    struct LinearProgram
    {
        std::size_t num_vars = 0;
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        std::vector<double> lower; // may be -kInf
        std::vector<double> upper; // may be +kInf
        std::vector<double> objective;
    };

    enum class LpStatus
    {
        optimal,
        infeasible,
        unbounded
    };

    struct LpResult
    {
        LpStatus status = LpStatus::infeasible;
        std::vector<double> x;
        double objective = 0.0;
        // Equality rows that could not be satisfied (infeasible status only).
        std::vector<std::size_t> violated_rows;
    };

    // Dense two-phase simplex with Bland's rule. `tol` is the feasibility tolerance
    // applied to the phase-one residual.
    LpResult solve_lp(const LinearProgram &lp, double tol = 1e-10);

    // Like solve_lp, but among optimal points returns the lexicographically smallest x
    // (sequential secondary minimisations of x_0, x_1, ...).
    LpResult solve_lp_lexicographic(const LinearProgram &lp, double tol = 1e-10);
}

#endif
