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

#ifndef FMF_ERROR_HPP
#define FMF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fmf
{
    // Base class for every error raised by the toolkit.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the domain where a model or operation is defined.
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Evaluation exactly at a pole (e.g. a Sellmeier resonance).
    class SingularityError : public Error
    {
    public:
        using Error::Error;
    };

    // A sign change of the characteristic function that did not refine to a root.
    class BracketError : public Error
    {
    public:
        using Error::Error;
    };

    // A mode could not be followed to a neighbouring wavelength (cutoff crossed).
    class ContinuationError : public Error
    {
    public:
        using Error::Error;
    };

    // Finite-difference estimates failed the half-step convergence check.
    class ConvergenceError : public Error
    {
    public:
        using Error::Error;
    };

    // A named item (mode, variable) is missing.
    class LookupError : public Error
    {
    public:
        using Error::Error;
    };

    // A sample without free lengths whose fixed lengths do not sum to one.
    class InfeasibleConstantError : public Error
    {
    public:
        using Error::Error;
    };

    // Filter with fewer than two taps.
    class DegenerateFilterError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
