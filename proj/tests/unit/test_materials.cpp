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
#include "fmf/materials.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Approx;
using namespace fmf;

TEST_CASE("Sellmeier indices match high-precision evaluation")
{
    // Reference values from 30-digit arithmetic.
    struct Row
    {
        double lambda, silica, germania;
    };
    const Row rows[] = {{0.5, 1.4623264867003779, 1.6169050386635095},
                        {1.0, 1.4504174094068748, 1.5937956303648701},
                        {1.55, 1.4440236217032608, 1.5871022088955133},
                        {2.0, 1.4380853528795102, 1.5827783083823962}};
    for (const auto &r : rows)
    {
        CHECK(sellmeier_index(kFusedSilica, r.lambda) == Approx(r.silica).epsilon(1e-14));
        CHECK(sellmeier_index(kGermania, r.lambda) == Approx(r.germania).epsilon(1e-14));
    }
}

TEST_CASE("Silica material dispersion near 1550 nm")
{
    // -(lambda / c) d2n/dlambda2, lambda in um, converted to ps/(km nm).
    const double h = 1e-3, l = 1.55;
    const double d2 = (sellmeier_index(kFusedSilica, l + h) - 2 * sellmeier_index(kFusedSilica, l) +
                       sellmeier_index(kFusedSilica, l - h)) /
                      (h * h);
    const double d = -l / 299792458.0 * d2 * 1e12;
    CHECK(d == Approx(21.9118).margin(2e-3));
}

TEST_CASE("Sellmeier singularity and domain errors")
{
    CHECK_THROWS_AS(sellmeier_index(kFusedSilica, 0.1162414), SingularityError);
    CHECK_THROWS_AS(sellmeier_index(kFusedSilica, 0.1162414 * (1 + 1e-14)), SingularityError);
    CHECK_NOTHROW(sellmeier_index(kFusedSilica, 0.2));

    MaterialModel model;
    CHECK_THROWS_AS(material_index(model, 0.0, 0.4999), DomainError);
    CHECK_THROWS_AS(material_index(model, 0.0, 2.0001), DomainError);
    CHECK_THROWS_AS(material_index(model, 0.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(material_index(MaterialModel{MaterialKind::sellmeier_blend}, 1.5, 1.55), DomainError);
    CHECK_THROWS_AS(material_index(MaterialModel{MaterialKind::sellmeier_blend}, -0.1, 1.55), DomainError);
    CHECK(material_index(model, 0.0, 0.5) == Approx(1.4623264867003779));

    MaterialModel bad;
    bad.silica[1].amplitude = -0.1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(FiberProfile("x", {{5.0, 0.01}}, bad), DomainError);
}

TEST_CASE("Blend endpoints reduce to the pure glasses")
{
    MaterialModel model{MaterialKind::sellmeier_blend};
    CHECK(material_index(model, 0.0, 1.3) == sellmeier_index(kFusedSilica, 1.3));
    CHECK(material_index(model, 1.0, 1.3) == Approx(sellmeier_index(kGermania, 1.3)).epsilon(1e-15));
    CHECK(to_string(MaterialKind::sellmeier_blend) == "sellmeier-blend");
    CHECK(to_string(MaterialKind::scaled_silica) == "scaled-silica");
}

TEST_CASE("Profile deltas are honoured at the reference wavelength")
{
    const std::vector<Layer> layers{{3.0, 0.0021}, {10.0, 0.0072}};
    for (const auto kind : {MaterialKind::scaled_silica, MaterialKind::sellmeier_blend})
    {
        const FiberProfile p("ring", layers, MaterialModel{kind});
        const double nc = p.cladding_index(1.55);
        CHECK(p.layer_index(0, 1.55) == Approx(nc * 1.0021).epsilon(1e-13));
        CHECK(p.layer_index(1, 1.55) == Approx(nc * 1.0072).epsilon(1e-13));
        CHECK(p.layer_index(2, 1.55) == nc);
        CHECK(p.max_index(1.55) == p.layer_index(1, 1.55));
        CHECK(p.is_guiding());
    }
    const FiberProfile blend("ring", layers, MaterialModel{MaterialKind::sellmeier_blend});
    REQUIRE(blend.blend_fractions().size() == 2);
    CHECK(blend.blend_fractions()[0] == Approx(0.02017).margin(1e-4));
    CHECK(blend.blend_fractions()[1] == Approx(0.06936).margin(1e-4));
    // Away from the reference wavelength the two models part: the blend index step is wavelength dependent.
    const double step_1000 = blend.layer_index(1, 1.0) / blend.cladding_index(1.0) - 1.0;
    const double step_2000 = blend.layer_index(1, 2.0) / blend.cladding_index(2.0) - 1.0;
    CHECK(std::abs(step_1000 - 0.0072) > 1e-5);
    CHECK(std::abs(step_2000 - 0.0072) > 1e-5);
}

TEST_CASE("Radial lookup assigns boundaries to the inner layer")
{
    const FiberProfile p("ring", {{3.0, 0.0021}, {10.0, 0.0072}});
    CHECK(p.region_of(0.0) == 0);
    CHECK(p.region_of(3.0) == 0);
    CHECK(p.region_of(std::nextafter(3.0, 4.0)) == 1);
    CHECK(p.region_of(10.0) == 1);
    CHECK(p.region_of(10.5) == 2);
    CHECK(profile_index(p, 50.0, 1.55) == p.cladding_index(1.55));
    CHECK(p.index_at(5.0, 1.55) == p.layer_index(1, 1.55));
    CHECK_THROWS_AS(p.index_at(-0.1, 1.55), DomainError);
}

TEST_CASE("Profile validation")
{
    CHECK_THROWS_AS(FiberProfile("e", {}), DomainError);
    CHECK_THROWS_AS(FiberProfile("e", {{0.0, 0.01}}), DomainError);
    CHECK_THROWS_AS(FiberProfile("e", {{5.0, 0.01}, {5.0, 0.02}}), DomainError);
    CHECK_THROWS_AS(FiberProfile("e", {{5.0, 0.01}, {4.0, 0.02}}), DomainError);
    CHECK_THROWS_AS(FiberProfile("e", {{5.0, -1.0}}), DomainError);
    CHECK_THROWS_AS(FiberProfile("e", {{5.0, std::nan("")}}), DomainError);
    // A depressed layer cannot be produced by adding germania.
    CHECK_THROWS_AS(FiberProfile("e", {{5.0, -0.001}}, MaterialModel{MaterialKind::sellmeier_blend}), DomainError);
    // All-zero deltas are representable but do not guide.
    const FiberProfile flat("flat", {{5.0, 0.0}});
    CHECK_FALSE(flat.is_guiding());
}
