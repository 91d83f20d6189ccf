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

#ifndef FMF_EXEC_HPP
#define FMF_EXEC_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace fmf
{
    // Execution policy for the data-parallel kernels. Every kernel writes each
    // result into its own pre-sized slot, so both policies give bit-identical output.
    enum class Exec
    {
        serial,
        parallel
    };

    // Calls fn(i) for i in [0, n). The serial branch is the reference
    // implementation; the parallel branch distributes indices with OpenMP.
    // If any call throws, the exception of the lowest failing index is rethrown.
    template <typename Fn>
    void for_each_index(Exec exec, std::size_t n, Fn &&fn)
    {
        if (exec == Exec::serial || n < 2)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::vector<std::exception_ptr> errors(n);
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i)
        {
            try
            {
                fn(static_cast<std::size_t>(i));
            }
            catch (...)
            {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}

#endif
