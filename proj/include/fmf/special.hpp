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

#ifndef FMF_SPECIAL_HPP
#define FMF_SPECIAL_HPP

namespace fmf::special
{
    // Value and first derivative (with respect to the argument) of a cylinder function.
    struct CylinderValue
    {
        double value;
        double derivative;
    };

    // Integer-order cylinder functions of the first/second kind and their modified
    // counterparts, for x > 0 (x >= 0 for J and I).
    double bessel_j(int n, double x);
    double bessel_y(int n, double x);
    double bessel_i(int n, double x);
    double bessel_k(int n, double x);

    CylinderValue bessel_j_d(int n, double x);
    CylinderValue bessel_y_d(int n, double x);
    CylinderValue bessel_i_d(int n, double x);
    CylinderValue bessel_k_d(int n, double x);
}

#endif
