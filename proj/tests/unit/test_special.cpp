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

#include "fmf/error.hpp"
#include "fmf/special.hpp"

#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;
using namespace fmf::special;

namespace
{
    // n, x, J, Y, I, K, J', K', Y', I' from 30-digit arithmetic.
    struct Reference
    {
        int n;
        double x, j, y, i, k, dj, dk, dy, di;
    };

    const Reference kReference[] = {
        {0, 0.5, 0.93846980724081290423, -0.44451873350670655715, 1.0634833707413235193, 0.92441907122766586178,
         -0.24226845767487388638, -1.6564411200033008937, 1.4714723926702430692, 0.25789430539089631636},
        {1, 2.3, 0.53987253260431369715, 0.052277315844224721977, 2.0978000275174211362, 0.094982443845362658227,
         -0.17918740364323000132, -0.12043664771746871568, 0.49534612844926352413, 1.9175186321417499462},
        {3, 7.9, -0.28949504000523754568, 0.053859667576890081919, 213.32667282925882717,
         0.00027751005157921823196, -0.028938563846440899844, -0.00031201941043732844717, -0.27297932248511203155,
         216.28123180661455495},
        {5, 12.5, 0.034737699762239727682, -0.23290393783115078509, 10949.615928079717196, 3.3924250310673800919e-6,
         0.21227028896477441489, -3.7700135916044020707e-6, 0.042921541010467355478, 11413.604950352804819},
        {0, 25.0, 0.096266783275958116174, -0.12724943226800613783, 5774560606.4663103158, 3.4641615622131143554e-12,
         0.12535024958028990465, -3.5327780731999337702e-12, 0.098829964783237410053, 5657865129.8787013531},
        {2, 0.01, 0.000012499895833658854145, -12732.713800775047099, 0.000012500104166992188563,
         19999.500068389409791, 0.0024999583335286454513, -3999999.9875720001712, 2546479.0815587273061,
         0.0025000416668619796527},
    };
}

TEST_CASE("Cylinder functions match high-precision references")
{
    for (const auto &r : kReference)
    {
        CAPTURE(r.n, r.x);
        CHECK(bessel_j(r.n, r.x) == Approx(r.j).epsilon(1e-12));
        CHECK(bessel_y(r.n, r.x) == Approx(r.y).epsilon(1e-12));
        CHECK(bessel_i(r.n, r.x) == Approx(r.i).epsilon(1e-12));
        CHECK(bessel_k(r.n, r.x) == Approx(r.k).epsilon(1e-12));
        CHECK(bessel_j_d(r.n, r.x).derivative == Approx(r.dj).epsilon(1e-11));
        CHECK(bessel_y_d(r.n, r.x).derivative == Approx(r.dy).epsilon(1e-11));
        CHECK(bessel_i_d(r.n, r.x).derivative == Approx(r.di).epsilon(1e-11));
        CHECK(bessel_k_d(r.n, r.x).derivative == Approx(r.dk).epsilon(1e-11));
        CHECK(bessel_k_d(r.n, r.x).value == bessel_k(r.n, r.x));
    }
}

TEST_CASE("Wronskian identities hold across orders and arguments")
{
    for (int n = 0; n <= 6; ++n)
        for (const double x : {0.3, 1.0, 4.2, 11.0, 30.0})
        {
            CAPTURE(n, x);
            const auto j = bessel_j_d(n, x), y = bessel_y_d(n, x);
            CHECK(j.value * y.derivative - j.derivative * y.value == Approx(2.0 / (M_PI * x)).epsilon(1e-10));
            const auto i = bessel_i_d(n, x), k = bessel_k_d(n, x);
            CHECK(i.value * k.derivative - i.derivative * k.value == Approx(-1.0 / x).epsilon(1e-10));
        }
}

TEST_CASE("Arguments outside the domain are rejected")
{
    CHECK_THROWS_AS(bessel_j(-1, 2.0), fmf::DomainError);
    CHECK_THROWS_AS(bessel_y(0, 0.0), fmf::DomainError);
    CHECK_THROWS_AS(bessel_k(1, -1.0), fmf::DomainError);
    CHECK_THROWS_AS(bessel_i(1, -1.0), fmf::DomainError);
    CHECK(bessel_j(3, -2.0) == Approx(-bessel_j(3, 2.0)));
}

TEST_CASE("Values at the origin")
{
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(2, 0.0) == 0.0);
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_j_d(1, 0.0).derivative == Approx(0.5));
}
