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

#include "fmf/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace fmf::io
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        std::string_view strip_comment(std::string_view s)
        {
            const auto hash = s.find('#');
            return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
                if (pos == std::string_view::npos)
                    return out;
                start = pos + 1;
            }
        }

        struct KeyValue
        {
            std::string_view key;
            std::string_view value;
        };

        std::optional<KeyValue> split_key_value(std::string_view line)
        {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                return std::nullopt;
            return KeyValue{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        }

        std::optional<int> parse_int(std::string_view text)
        {
            text = trim(text);
            int v = 0;
            const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
            if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
                return std::nullopt;
            return v;
        }

        bool is_identifier(std::string_view s)
        {
            if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_'))
                return false;
            return std::all_of(s.begin(), s.end(), [](char c)
                               { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
        }

        std::ifstream open_input(const std::filesystem::path &path)
        {
            std::ifstream in(path);
            if (!in)
                throw ParseError({{path.string(), 0, "cannot open file"}});
            return in;
        }

        // Two-column "name,value" section reader for the CSV files with summary blocks.
        struct Section
        {
            std::string header;
            std::vector<std::pair<std::string, std::string>> rows;
            std::vector<int> lines;
        };

        std::vector<Section> read_sections(std::istream &in)
        {
            std::vector<Section> sections;
            std::string line;
            int line_no = 0;
            bool need_header = true;
            while (std::getline(in, line))
            {
                ++line_no;
                const auto t = trim(line);
                if (t.empty())
                {
                    need_header = true;
                    continue;
                }
                if (need_header)
                {
                    sections.push_back({std::string(t), {}, {}});
                    need_header = false;
                    continue;
                }
                const auto comma = t.find(',');
                sections.back().rows.emplace_back(std::string(trim(t.substr(0, comma))),
                                                  comma == std::string_view::npos ? std::string() : std::string(trim(t.substr(comma + 1))));
                sections.back().lines.push_back(line_no);
            }
            return sections;
        }
    }

    std::string Diagnostic::to_string() const
    {
        std::string out = file;
        if (line > 0)
            out += ":" + std::to_string(line);
        return out + ": " + message;
    }

    void sort_diagnostics(std::vector<Diagnostic> &diagnostics)
    {
        std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &a, const Diagnostic &b)
                         { return std::tie(a.file, a.line) < std::tie(b.file, b.line); });
    }

    namespace
    {
        std::string join(const std::vector<Diagnostic> &diagnostics)
        {
            std::string out;
            for (const auto &d : diagnostics)
                out += (out.empty() ? "" : "\n") + d.to_string();
            return out;
        }
    }

    ParseError::ParseError(std::vector<Diagnostic> diagnostics)
        : Error(join(diagnostics)), diagnostics_(std::move(diagnostics))
    {
    }

    std::string format_number(double value)
    {
        char buf[64];
        const auto r = std::to_chars(buf, buf + sizeof buf, value);
        return std::string(buf, r.ptr);
    }

    std::optional<double> parse_number(std::string_view text)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        double v = 0.0;
        const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || r.ec != std::errc{} || r.ptr != text.data() + text.size())
            return std::nullopt;
        return v;
    }

    // --- profile -------------------------------------------------------------

    FiberProfile parse_profile(std::istream &in, const std::string &source)
    {
        struct PendingLayer
        {
            int line;
            std::optional<double> radius;
            int radius_line = 0;
            std::optional<double> delta;
        };

        std::vector<Diagnostic> diag;
        std::string name = "unnamed";
        MaterialModel material;
        std::vector<PendingLayer> layers;

        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            const auto line = strip_comment(raw);
            if (line.empty())
                continue;
            if (line.front() == '[')
            {
                if (line == "[layer]")
                    layers.push_back({line_no, {}, 0, {}});
                else
                    diag.push_back({source, line_no, "unknown section '" + std::string(line) + "'"});
                continue;
            }
            const auto kv = split_key_value(line);
            if (!kv)
            {
                diag.push_back({source, line_no, "expected 'key = value'"});
                continue;
            }
            if (layers.empty())
            {
                if (kv->key == "name")
                    name = std::string(kv->value);
                else if (kv->key == "material_model")
                {
                    if (kv->value == "scaled-silica")
                        material.kind = MaterialKind::scaled_silica;
                    else if (kv->value == "sellmeier-blend")
                        material.kind = MaterialKind::sellmeier_blend;
                    else
                        diag.push_back({source, line_no, "unknown material_model '" + std::string(kv->value) +
                                                             "' (expected scaled-silica or sellmeier-blend)"});
                }
                else
                    diag.push_back({source, line_no, "unknown key '" + std::string(kv->key) + "'"});
                continue;
            }
            auto &layer = layers.back();
            const auto value = parse_number(kv->value);
            if (kv->key != "radius_um" && kv->key != "delta_percent")
            {
                diag.push_back({source, line_no, "unknown layer key '" + std::string(kv->key) + "'"});
                continue;
            }
            if (!value || !std::isfinite(*value))
            {
                diag.push_back({source, line_no, "invalid number '" + std::string(kv->value) + "'"});
                continue;
            }
            if (kv->key == "radius_um")
            {
                layer.radius = *value;
                layer.radius_line = line_no;
            }
            else
                layer.delta = *value / 100.0;
        }

        if (layers.empty())
            diag.push_back({source, 0, "profile defines no [layer] sections"});

        std::vector<Layer> out;
        double previous = 0.0;
        bool guiding = false;
        for (const auto &layer : layers)
        {
            if (!layer.radius)
                diag.push_back({source, layer.line, "layer is missing radius_um"});
            if (!layer.delta)
                diag.push_back({source, layer.line, "layer is missing delta_percent"});
            if (layer.radius)
            {
                if (!(*layer.radius > 0.0))
                    diag.push_back({source, layer.radius_line, "radius_um must be > 0"});
                else if (!(*layer.radius > previous))
                    diag.push_back({source, layer.radius_line, "layer radii must be strictly increasing"});
                previous = std::max(previous, *layer.radius);
            }
            if (!layer.radius || !layer.delta)
                continue;
            guiding = guiding || *layer.delta > 0.0;
            out.push_back({*layer.radius, *layer.delta});
        }
        if (!layers.empty() && !guiding && diag.empty())
            diag.push_back({source, 0, "no layer has a positive delta_percent (profile does not guide)"});

        if (diag.empty())
        {
            try
            {
                return FiberProfile(name, std::move(out), material);
            }
            catch (const Error &e)
            {
                diag.push_back({source, 0, e.what()});
            }
        }
        sort_diagnostics(diag);
        throw ParseError(std::move(diag));
    }

    FiberProfile load_profile(const std::filesystem::path &path)
    {
        auto in = open_input(path);
        return parse_profile(in, path.string());
    }

    // --- conversion graph ---------------------------------------------------

    ConversionGraph parse_graph(std::istream &in, const std::string &source)
    {
        std::vector<Diagnostic> diag;
        std::map<int, SamplePath> samples;
        std::map<int, int> section_line;
        std::optional<int> current;

        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            const auto line = strip_comment(raw);
            if (line.empty())
                continue;
            if (line.front() == '[')
            {
                current.reset();
                const auto inner = trim(line.substr(1, line.size() >= 2 && line.back() == ']' ? line.size() - 2 : line.size() - 1));
                std::optional<int> n;
                if (line.back() == ']' && inner.substr(0, 6) == "sample")
                    n = parse_int(inner.substr(6));
                if (!n || *n < 1)
                {
                    diag.push_back({source, line_no, "expected '[sample N]' with N >= 1"});
                    continue;
                }
                if (samples.count(*n))
                {
                    diag.push_back({source, line_no, "duplicate section [sample " + std::to_string(*n) + "]"});
                    continue;
                }
                samples[*n] = {};
                section_line[*n] = line_no;
                current = *n;
                continue;
            }
            const auto kv = split_key_value(line);
            if (!kv || kv->key != "segment")
            {
                diag.push_back({source, line_no, "expected 'segment = LPlm, <variable|fixed|length>'"});
                continue;
            }
            if (!current)
            {
                diag.push_back({source, line_no, "segment outside a [sample N] section"});
                continue;
            }
            const auto parts = split(kv->value, ',');
            if (parts.size() != 2)
            {
                diag.push_back({source, line_no, "segment needs exactly two fields: mode, length"});
                continue;
            }
            const auto mode = parse_mode_label(parts[0]);
            if (!mode)
            {
                diag.push_back({source, line_no, "invalid mode label '" + std::string(parts[0]) + "'"});
                continue;
            }
            Segment segment{*mode, {}, 1.0};
            if (parts[1] == "fixed")
                segment.fixed_length = 1.0;
            else if (const auto v = parse_number(parts[1]))
                segment.fixed_length = *v;
            else if (is_identifier(parts[1]) && parts[1] != "dD")
                segment.variable = std::string(parts[1]);
            else
            {
                diag.push_back({source, line_no, "invalid segment length '" + std::string(parts[1]) + "'"});
                continue;
            }
            samples[*current].segments.push_back(std::move(segment));
        }

        ConversionGraph graph;
        for (auto &[n, path] : samples)
        {
            if (path.segments.empty())
                diag.push_back({source, section_line[n], "sample " + std::to_string(n) + " has no segments"});
            graph.samples.push_back(std::move(path));
        }
        if (samples.empty())
            diag.push_back({source, 0, "graph defines no [sample N] sections"});
        if (diag.empty())
        {
            try
            {
                graph.validate();
                return graph;
            }
            catch (const Error &e)
            {
                diag.push_back({source, 0, e.what()});
            }
        }
        sort_diagnostics(diag);
        throw ParseError(std::move(diag));
    }

    ConversionGraph load_graph(const std::filesystem::path &path)
    {
        auto in = open_input(path);
        return parse_graph(in, path.string());
    }

    // --- mode tables --------------------------------------------------------

    void write_mode_table(std::ostream &out, const ModeTable &table, bool header)
    {
        if (header)
            out << kModeTableHeader << '\n';
        for (const auto &mode : table.modes)
            out << mode.id.l << ',' << mode.id.m << ',' << format_number(mode.n_eff) << ','
                << format_number(mode.tau_ps_per_km) << ',' << format_number(mode.dispersion_ps_per_km_nm) << ','
                << format_number(mode.lambda0_um * 1000.0) << '\n';
    }

    void write_mode_tables(std::ostream &out, const std::vector<ModeTable> &tables)
    {
        out << kModeTableHeader << '\n';
        for (const auto &table : tables)
            write_mode_table(out, table, false);
    }

    std::vector<ModeTable> parse_mode_tables(std::istream &in, const std::string &source)
    {
        std::vector<Diagnostic> diag;
        std::vector<ModeTable> tables;
        std::vector<double> lambda_nm;
        std::string raw;
        int line_no = 0;
        bool header_seen = false;
        while (std::getline(in, raw))
        {
            ++line_no;
            const auto line = trim(raw);
            if (line.empty())
                continue;
            if (!header_seen)
            {
                if (line != kModeTableHeader)
                    diag.push_back({source, line_no, "expected header '" + std::string(kModeTableHeader) + "'"});
                header_seen = true;
                continue;
            }
            const auto f = split(line, ',');
            if (f.size() != 6)
            {
                diag.push_back({source, line_no, "expected 6 fields"});
                continue;
            }
            const auto l = parse_int(f[0]), m = parse_int(f[1]);
            const auto n = parse_number(f[2]), tau = parse_number(f[3]), d = parse_number(f[4]), lam = parse_number(f[5]);
            if (!l || !m || *l < 0 || *m < 1)
            {
                diag.push_back({source, line_no, "invalid mode orders"});
                continue;
            }
            if (!n || !tau || !d || !lam || !std::isfinite(*n) || !std::isfinite(*tau) || !std::isfinite(*d) ||
                !(*lam > 0.0))
            {
                diag.push_back({source, line_no, "invalid numeric field"});
                continue;
            }
            if (*tau < 0.0)
            {
                diag.push_back({source, line_no, "group delay must be >= 0"});
                continue;
            }
            if (lambda_nm.empty() || lambda_nm.back() != *lam)
            {
                lambda_nm.push_back(*lam);
                tables.emplace_back();
                tables.back().lambda0_um = *lam / 1000.0;
                tables.back().profile_name = source;
            }
            auto &table = tables.back();
            const ModeId id{*l, *m};
            if (table.find(id))
            {
                diag.push_back({source, line_no, "duplicate mode " + to_string(id)});
                continue;
            }
            table.modes.push_back({id, *n, *tau, *d, table.lambda0_um});
        }
        if (!header_seen)
            diag.push_back({source, 0, "empty mode table file"});
        if (!diag.empty())
            throw ParseError(std::move(diag));
        for (auto &table : tables)
            std::stable_sort(table.modes.begin(), table.modes.end(), [](const ModeRecord &a, const ModeRecord &b)
                             { return a.n_eff > b.n_eff; });
        return tables;
    }

    ModeTable load_mode_table(const std::filesystem::path &path)
    {
        auto in = open_input(path);
        auto tables = parse_mode_tables(in, path.string());
        if (tables.size() != 1)
            throw ParseError({{path.string(), 0, "expected modes at exactly one wavelength, found " +
                                                     std::to_string(tables.size())}});
        return std::move(tables.front());
    }

    // --- placements ---------------------------------------------------------

    void write_placements(std::ostream &out, const PlacementSolution &s)
    {
        out << "variable,value\n";
        for (std::size_t j = 0; j < s.variables.size(); ++j)
            out << s.variables[j] << ',' << format_number(s.values[j]) << '\n';
        out << "\nsummary,value\n";
        out << "lambda0_nm," << format_number(s.lambda0_um * 1000.0) << '\n';
        out << "reference_mode," << to_string(s.reference) << '\n';
        out << "reference_tau_ps_per_km," << format_number(s.reference_tau_ps_per_km) << '\n';
        out << "dispersion_rule," << to_string(s.rule) << '\n';
        out << "delta_tau_ps_per_km," << format_number(s.delta_tau) << '\n';
        out << "delta_d_ps_per_km_nm," << format_number(s.delta_d) << '\n';
        out << "max_residual," << format_number(s.max_residual) << '\n';
        for (std::size_t i = 0; i < s.tau_eq.size(); ++i)
            out << "tau_eq_" << i + 1 << ',' << format_number(s.tau_eq[i]) << '\n';
        for (std::size_t i = 0; i < s.dispersion_eq.size(); ++i)
            out << "D_eq_" << i + 1 << ',' << format_number(s.dispersion_eq[i]) << '\n';
    }

    PlacementSolution parse_placements(std::istream &in, const std::string &source)
    {
        std::vector<Diagnostic> diag;
        const auto sections = read_sections(in);
        if (sections.size() != 2 || sections[0].header != "variable,value" || sections[1].header != "summary,value")
            throw ParseError({{source, 0, "expected a 'variable,value' block followed by a 'summary,value' block"}});

        PlacementSolution s;
        for (std::size_t k = 0; k < sections[0].rows.size(); ++k)
        {
            const auto &[name, text] = sections[0].rows[k];
            const auto v = parse_number(text);
            if (!is_identifier(name) || !v)
                diag.push_back({source, sections[0].lines[k], "invalid placement row"});
            else
            {
                s.variables.push_back(name);
                s.values.push_back(*v);
            }
        }

        std::map<int, double> tau, disp;
        bool have_lambda = false;
        for (std::size_t k = 0; k < sections[1].rows.size(); ++k)
        {
            const auto &[key, text] = sections[1].rows[k];
            const int line = sections[1].lines[k];
            if (key == "reference_mode")
            {
                if (const auto id = parse_mode_label(text))
                    s.reference = *id;
                else
                    diag.push_back({source, line, "invalid reference mode"});
                continue;
            }
            if (key == "dispersion_rule")
            {
                if (text == "maximize")
                    s.rule = DispersionRule::maximize;
                else if (text == "fixed")
                    s.rule = DispersionRule::fixed;
                else if (text == "delays-only")
                    s.rule = DispersionRule::delays_only;
                else
                    diag.push_back({source, line, "invalid dispersion rule"});
                continue;
            }
            const auto v = parse_number(text);
            if (!v)
            {
                diag.push_back({source, line, "invalid number for '" + key + "'"});
                continue;
            }
            if (key == "lambda0_nm")
            {
                s.lambda0_um = *v / 1000.0;
                have_lambda = true;
            }
            else if (key == "reference_tau_ps_per_km")
                s.reference_tau_ps_per_km = *v;
            else if (key == "delta_tau_ps_per_km")
                s.delta_tau = *v;
            else if (key == "delta_d_ps_per_km_nm")
                s.delta_d = *v;
            else if (key == "max_residual")
                s.max_residual = *v;
            else if (key.rfind("tau_eq_", 0) == 0 && parse_int(std::string_view(key).substr(7)).value_or(0) > 0)
                tau[*parse_int(std::string_view(key).substr(7))] = *v;
            else if (key.rfind("D_eq_", 0) == 0 && parse_int(std::string_view(key).substr(5)).value_or(0) > 0)
                disp[*parse_int(std::string_view(key).substr(5))] = *v;
            else
                diag.push_back({source, line, "unknown summary key '" + key + "'"});
        }
        if (!have_lambda)
            diag.push_back({source, 0, "summary is missing lambda0_nm"});
        if (tau.size() != disp.size() || tau.empty())
            diag.push_back({source, 0, "summary needs matching tau_eq_i and D_eq_i entries"});
        int expected = 1;
        for (const auto &[i, v] : tau)
        {
            if (i != expected++ || !disp.count(i))
            {
                diag.push_back({source, 0, "tau_eq_i / D_eq_i indices must run 1..N"});
                break;
            }
            s.tau_eq.push_back(v);
            s.dispersion_eq.push_back(disp[i]);
        }
        if (!diag.empty())
        {
            sort_diagnostics(diag);
            throw ParseError(std::move(diag));
        }
        return s;
    }

    PlacementSolution load_placements(const std::filesystem::path &path)
    {
        auto in = open_input(path);
        return parse_placements(in, path.string());
    }

    // --- outputs ------------------------------------------------------------

    void write_lpg_positions(std::ostream &out, const std::vector<LpgPosition> &positions)
    {
        out << "junction,from_mode,to_mode,z_km\n";
        for (const auto &p : positions)
            out << p.junction << ',' << to_string(p.from) << ',' << to_string(p.to) << ',' << format_number(p.z_km) << '\n';
    }

    void write_delay_curve(std::ostream &out, const DelayCurve &curve)
    {
        const std::size_t samples = curve.sample_delays.empty() ? 0 : curve.sample_delays.front().size();
        out << "lambda_nm";
        for (std::size_t i = 0; i < samples; ++i)
            out << ",tau" << i + 1;
        for (std::size_t i = 0; i + 1 < samples; ++i)
            out << ",dtau" << i + 2 << i + 1;
        out << '\n';
        for (std::size_t k = 0; k < curve.wavelengths_nm.size(); ++k)
        {
            out << format_number(curve.wavelengths_nm[k]);
            for (const double t : curve.sample_delays[k])
                out << ',' << format_number(t);
            for (const double d : curve.differential[k])
                out << ',' << format_number(d);
            out << '\n';
        }
    }

    void write_rf_response(std::ostream &out, const RfResponse &response)
    {
        out << "f_GHz,re,im,mag_db\n";
        for (std::size_t k = 0; k < response.frequencies_ghz.size(); ++k)
            out << format_number(response.frequencies_ghz[k]) << ',' << format_number(response.response[k].real()) << ','
                << format_number(response.response[k].imag()) << ',' << format_number(response.magnitude_db(k)) << '\n';
    }

    void write_robustness(std::ostream &out, const RobustnessReport &report)
    {
        out << "trial,feasible,max_abs_dl,delta_d\n";
        for (const auto &t : report.trials)
            out << t.trial << ',' << (t.feasible ? 1 : 0) << ',' << format_number(t.max_abs_dl) << ','
                << format_number(t.delta_d) << '\n';
        out << "\nsummary,value\n";
        out << "trials," << report.trials.size() << '\n';
        out << "feasible_fraction," << format_number(report.feasible_fraction) << '\n';
        out << "median_max_abs_dl," << format_number(report.median_max_abs_dl) << '\n';
        out << "delta_d_mean," << format_number(report.delta_d_mean) << '\n';
        out << "delta_d_stddev," << format_number(report.delta_d_stddev) << '\n';
        out << "nominal_delta_d," << format_number(report.nominal.delta_d) << '\n';
    }

    void write_file_atomic(const std::filesystem::path &path, std::string_view contents)
    {
        auto tmp = path;
        tmp += ".tmp";
        try
        {
            if (path.has_parent_path())
                std::filesystem::create_directories(path.parent_path());
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
                out.flush();
                if (!out)
                    throw Error("failed to write " + path.string());
            }
            std::filesystem::rename(tmp, path);
        }
        catch (const std::filesystem::filesystem_error &e)
        {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("failed to write " + path.string() + ": " + e.code().message());
        }
        catch (const Error &)
        {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw;
        }
    }
}
