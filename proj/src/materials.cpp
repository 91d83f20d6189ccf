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

#include "fmf/materials.hpp"

#include "fmf/error.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace fmf
{
    namespace
    {
        void check_wavelength(double lambda_um)
        {
            if (!(lambda_um >= kMinWavelengthUm && lambda_um <= kMaxWavelengthUm))
                throw DomainError("wavelength " + std::to_string(lambda_um) +
                                  " um outside the material model range [0.5, 2.0] um");
        }

        SellmeierCoefficients blend(const MaterialModel &model, double fraction)
        {
            SellmeierCoefficients out{};
            for (std::size_t k = 0; k < out.size(); ++k)
            {
                out[k].amplitude = (1.0 - fraction) * model.silica[k].amplitude + fraction * model.germania[k].amplitude;
                out[k].resonance_um = (1.0 - fraction) * model.silica[k].resonance_um + fraction * model.germania[k].resonance_um;
            }
            return out;
        }

        // Blend fraction whose index at the reference wavelength is n_clad * (1 + delta).
        double calibrate_blend(const MaterialModel &model, double delta)
        {
            if (delta == 0.0)
                return 0.0;
            const double target = sellmeier_index(model.silica, kDeltaReferenceUm) * (1.0 + delta);
            auto f = [&](double x)
            { return sellmeier_index(blend(model, x), kDeltaReferenceUm) - target; };

            double lo = 0.0, hi = 1.0;
            double flo = f(lo), fhi = f(hi);
            if (flo * fhi > 0.0)
                throw DomainError("layer delta " + std::to_string(delta) +
                                  " is not reachable with a silica/germania blend fraction in [0, 1]");
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                const double fm = f(mid);
                if (fm == 0.0)
                    return mid;
                if ((fm < 0.0) == (flo < 0.0))
                {
                    lo = mid;
                    flo = fm;
                }
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }

    void MaterialModel::validate() const
    {
        for (const auto *set : {&silica, &germania})
            for (const auto &term : *set)
                if (!(term.amplitude > 0.0) || !(term.resonance_um > 0.0) ||
                    !std::isfinite(term.amplitude) || !std::isfinite(term.resonance_um))
                    throw DomainError("Sellmeier amplitudes and resonance wavelengths must be positive");
    }

    std::string to_string(MaterialKind kind)
    {
        return kind == MaterialKind::scaled_silica ? "scaled-silica" : "sellmeier-blend";
    }

    double sellmeier_index(const SellmeierCoefficients &coefficients, double lambda_um)
    {
        const double l2 = lambda_um * lambda_um;
        double sum = 1.0;
        for (const auto &term : coefficients)
        {
            const double c2 = term.resonance_um * term.resonance_um;
            const double denom = l2 - c2;
            if (std::abs(denom) <= 1e-12 * l2)
                throw SingularityError("wavelength " + std::to_string(lambda_um) +
                                       " um coincides with a Sellmeier resonance");
            sum += term.amplitude * l2 / denom;
        }
        if (!(sum > 0.0))
            throw DomainError("Sellmeier sum is non-positive at " + std::to_string(lambda_um) + " um");
        return std::sqrt(sum);
    }

    double material_index(const MaterialModel &model, double blend_fraction, double lambda_um)
    {
        check_wavelength(lambda_um);
        if (model.kind == MaterialKind::scaled_silica)
            return sellmeier_index(model.silica, lambda_um);
        if (!(blend_fraction >= 0.0 && blend_fraction <= 1.0))
            throw DomainError("blend fraction " + std::to_string(blend_fraction) + " outside [0, 1]");
        return sellmeier_index(blend(model, blend_fraction), lambda_um);
    }

    FiberProfile::FiberProfile(std::string name, std::vector<Layer> layers, MaterialModel material)
        : name_(std::move(name)), layers_(std::move(layers)), material_(material)
    {
        material_.validate();
        if (layers_.empty())
            throw DomainError("fiber profile needs at least one layer");
        double previous = 0.0;
        for (std::size_t j = 0; j < layers_.size(); ++j)
        {
            const auto &layer = layers_[j];
            if (!(layer.outer_radius_um > previous) || !std::isfinite(layer.outer_radius_um))
                throw DomainError("layer " + std::to_string(j + 1) + ": radii must be positive and strictly increasing");
            if (!std::isfinite(layer.delta) || layer.delta <= -1.0)
                throw DomainError("layer " + std::to_string(j + 1) + ": delta must be finite and > -1");
            previous = layer.outer_radius_um;
        }

        blend_.assign(layers_.size(), 0.0);
        if (material_.kind == MaterialKind::sellmeier_blend)
            for (std::size_t j = 0; j < layers_.size(); ++j)
                blend_[j] = calibrate_blend(material_, layers_[j].delta);
    }

    bool FiberProfile::is_guiding() const
    {
        for (const auto &layer : layers_)
            if (layer.delta > 0.0)
                return true;
        return false;
    }

    double FiberProfile::cladding_index(double lambda_um) const
    {
        check_wavelength(lambda_um);
        return sellmeier_index(material_.silica, lambda_um);
    }

    double FiberProfile::layer_index(std::size_t layer, double lambda_um) const
    {
        if (layer >= layers_.size())
            return cladding_index(lambda_um);
        if (material_.kind == MaterialKind::scaled_silica)
            return cladding_index(lambda_um) * (1.0 + layers_[layer].delta);
        if (layers_[layer].delta == 0.0)
            return cladding_index(lambda_um);
        return material_index(material_, blend_[layer], lambda_um);
    }

    double FiberProfile::max_index(double lambda_um) const
    {
        double n = cladding_index(lambda_um);
        for (std::size_t j = 0; j < layers_.size(); ++j)
            n = std::max(n, layer_index(j, lambda_um));
        return n;
    }

    std::size_t FiberProfile::region_of(double r_um) const
    {
        if (!(r_um >= 0.0))
            throw DomainError("radius must be >= 0");
        for (std::size_t j = 0; j < layers_.size(); ++j)
            if (r_um <= layers_[j].outer_radius_um)
                return j;
        return layers_.size();
    }

    double FiberProfile::index_at(double r_um, double lambda_um) const
    {
        return layer_index(region_of(r_um), lambda_um);
    }
}
