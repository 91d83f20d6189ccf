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

#ifndef FMF_MATERIALS_HPP
#define FMF_MATERIALS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fmf
{
    // One Sellmeier term: amplitude * lambda^2 / (lambda^2 - resonance^2).
    struct SellmeierTerm
    {
        double amplitude;
        double resonance_um;
    };

    using SellmeierCoefficients = std::array<SellmeierTerm, 3>;

    // Fused silica (Malitson, 1965).
    inline constexpr SellmeierCoefficients kFusedSilica{{{0.6961663, 0.0684043},
                                                         {0.4079426, 0.1162414},
                                                         {0.8974794, 9.896161}}};

    // Pure germania glass (Fleming, 1984).
    inline constexpr SellmeierCoefficients kGermania{{{0.80686642, 0.068972606},
                                                      {0.71815848, 0.15396605},
                                                      {0.85416831, 11.841931}}};

    // Wavelength at which layer deltas are specified (1550 nm).
    inline constexpr double kDeltaReferenceUm = 1.55;

    // Wavelength window accepted by the material models.
    inline constexpr double kMinWavelengthUm = 0.5;
    inline constexpr double kMaxWavelengthUm = 2.0;

    enum class MaterialKind
    {
        scaled_silica,  // layer index = n_silica(lambda) * (1 + delta)
        sellmeier_blend // layer index from silica/germania coefficients mixed by a blend fraction
    };

    struct MaterialModel
    {
        MaterialKind kind = MaterialKind::scaled_silica;
        SellmeierCoefficients silica = kFusedSilica;
        SellmeierCoefficients germania = kGermania;

        // Throws DomainError unless all amplitudes and resonance wavelengths are positive.
        void validate() const;
    };

    std::string to_string(MaterialKind kind);

    // Three-term Sellmeier sum. Throws SingularityError when lambda sits on a resonance.
    double sellmeier_index(const SellmeierCoefficients &coefficients, double lambda_um);

    // Refractive index of a layer material. For sellmeier_blend the amplitudes and
    // resonance wavelengths are interpolated linearly between silica (0) and germania (1)
    // by blend_fraction; for scaled_silica the fraction is ignored and pure silica is used.
    // Throws DomainError for lambda outside [0.5, 2.0] um or blend_fraction outside [0, 1].
    double material_index(const MaterialModel &model, double blend_fraction, double lambda_um);

    struct Layer
    {
        double outer_radius_um;
        double delta; // (n_layer - n_clad) / n_clad at kDeltaReferenceUm
    };

    /// Piecewise-constant radial index profile over a pure-silica cladding.
    ///
    /// Layers are ordered from the axis outwards; everything beyond the last
    /// layer radius is cladding. A boundary radius belongs to the inner layer.
    /// Under sellmeier_blend each layer gets a blend fraction calibrated so that
    /// its index at 1550 nm equals n_clad * (1 + delta).
    class FiberProfile
    {
    public:
        FiberProfile(std::string name, std::vector<Layer> layers, MaterialModel material = {});

        const std::string &name() const { return name_; }
        const std::vector<Layer> &layers() const { return layers_; }
        const MaterialModel &material() const { return material_; }
        const std::vector<double> &blend_fractions() const { return blend_; }

        // True if any layer has a positive delta.
        bool is_guiding() const;

        double cladding_index(double lambda_um) const;
        double layer_index(std::size_t layer, double lambda_um) const;

        // Largest layer (or cladding) index at lambda.
        double max_index(double lambda_um) const;

        // Index of the layer containing r, or layers().size() for the cladding.
        std::size_t region_of(double r_um) const;

        // Index at radius r. Throws DomainError for r < 0.
        double index_at(double r_um, double lambda_um) const;

    private:
        std::string name_;
        std::vector<Layer> layers_;
        MaterialModel material_;
        std::vector<double> blend_;
    };

    inline double profile_index(const FiberProfile &profile, double r_um, double lambda_um)
    {
        return profile.index_at(r_um, lambda_um);
    }
}

#endif
