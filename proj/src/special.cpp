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

#include "fmf/special.hpp"

#include "fmf/error.hpp"

#include <cmath>
#include <string>

// The standard library special math functions provide the values; derivatives
// come from the recurrences Z'_n = Z_{n-1} - (n/x) Z_n (J, Y, I) and
// K'_n = -K_{n-1} - (n/x) K_n, with the n = 0 cases Z'_0 = -Z_1, I'_0 = I_1, K'_0 = -K_1.

namespace fmf::special
{
    namespace
    {
        void check_order(int n)
        {
            if (n < 0)
                throw DomainError("negative Bessel order " + std::to_string(n));
        }
    }

    double bessel_j(int n, double x)
    {
        check_order(n);
        return x < 0.0 ? ((n % 2) ? -1.0 : 1.0) * std::cyl_bessel_j(n, -x) : std::cyl_bessel_j(n, x);
    }

    double bessel_y(int n, double x)
    {
        check_order(n);
        if (!(x > 0.0))
            throw DomainError("Y_n requires x > 0");
        return std::cyl_neumann(n, x);
    }

    double bessel_i(int n, double x)
    {
        check_order(n);
        if (!(x >= 0.0))
            throw DomainError("I_n requires x >= 0");
        return std::cyl_bessel_i(n, x);
    }

    double bessel_k(int n, double x)
    {
        check_order(n);
        if (!(x > 0.0))
            throw DomainError("K_n requires x > 0");
        return std::cyl_bessel_k(n, x);
    }

    CylinderValue bessel_j_d(int n, double x)
    {
        const double v = bessel_j(n, x);
        if (n == 0)
            return {v, -bessel_j(1, x)};
        if (x == 0.0)
            return {v, n == 1 ? 0.5 : 0.0};
        return {v, bessel_j(n - 1, x) - n / x * v};
    }

    CylinderValue bessel_y_d(int n, double x)
    {
        const double v = bessel_y(n, x);
        if (n == 0)
            return {v, -bessel_y(1, x)};
        return {v, bessel_y(n - 1, x) - n / x * v};
    }

    CylinderValue bessel_i_d(int n, double x)
    {
        const double v = bessel_i(n, x);
        if (n == 0)
            return {v, bessel_i(1, x)};
        if (x == 0.0)
            return {v, n == 1 ? 0.5 : 0.0};
        return {v, bessel_i(n - 1, x) - n / x * v};
    }

    CylinderValue bessel_k_d(int n, double x)
    {
        const double v = bessel_k(n, x);
        if (n == 0)
            return {v, -bessel_k(1, x)};
        return {v, -bessel_k(n - 1, x) - n / x * v};
    }
}
