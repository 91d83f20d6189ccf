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

#include "fmf/cli.hpp"

#include "fmf/mode_solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

namespace fmf::cli
{
    namespace
    {
        constexpr const char *kArgs = "<command line>";

        struct Raw
        {
            std::map<std::string, std::string> values; // flag -> text
            std::string command;
        };

        // Flags accepted per command, with the help text shown by --help.
        struct Flag
        {
            const char *name;
            const char *help;
        };

        const std::map<std::string, std::vector<Flag>> &command_flags()
        {
            static const std::map<std::string, std::vector<Flag>> flags{
                {"solve-modes",
                 {{"--profile", "fiber profile file (required)"},
                  {"--lambda-nm", "wavelength in nm (default 1550)"},
                  {"--sweep-nm", "optional wavelength sweep start:stop:step in nm"},
                  {"--scan-points", "n_eff grid size per azimuthal order (default 2000, >= 500)"},
                  {"--exec", "serial | parallel (default parallel)"}}},
                {"design",
                 {{"--modes", "mode table CSV (required)"},
                  {"--graph", "conversion graph file (required)"},
                  {"--dtau", "target differential delay in ps/km (default 100)"},
                  {"--rule", "maximize | delays-only | fixed:<ps/(km nm)> (default maximize)"},
                  {"--reference", "reference mode for relative delays (default LP01)"},
                  {"--length-km", "link length used for LPG positions (default 1)"}}},
                {"evaluate",
                 {{"--placements", "placements CSV from design (required)"},
                  {"--range-nm", "wavelength grid start:stop:step in nm (default 1540:1560:0.5)"},
                  {"--model", "first-order | numeric (default first-order)"},
                  {"--profile", "fiber profile (numeric model)"},
                  {"--graph", "conversion graph (numeric model)"},
                  {"--lpg-bandwidth-nm", "LPG operating bandwidth centred at lambda0 (default 20)"},
                  {"--scan-points", "n_eff grid size for the numeric model (default 2000)"},
                  {"--exec", "serial | parallel (default parallel)"}}},
                {"rf-response",
                 {{"--placements", "placements CSV from design (required)"},
                  {"--length-km", "link length in km (default 1)"},
                  {"--lambda-nm", "optical carrier in nm (default: design wavelength)"},
                  {"--amplitudes", "comma-separated tap amplitudes (default: equal)"},
                  {"--freq-ghz", "frequency grid start:stop:step in GHz (default 0:20:0.01)"},
                  {"--exec", "serial | parallel (default parallel)"}}},
                {"perturb",
                 {{"--modes", "mode table CSV (required)"},
                  {"--graph", "conversion graph file (required)"},
                  {"--dtau", "target differential delay in ps/km (default 100)"},
                  {"--rule", "maximize | delays-only | fixed:<ps/(km nm)> (default maximize)"},
                  {"--reference", "reference mode (default LP01)"},
                  {"--sigma", "relative standard deviation of the perturbations (default 0.01)"},
                  {"--trials", "number of trials (default 100)"},
                  {"--seed", "random seed (default 1)"},
                  {"--exec", "serial | parallel (default parallel)"}}},
            };
            return flags;
        }

        std::optional<std::uint64_t> parse_u64(std::string_view s)
        {
            std::uint64_t v = 0;
            const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size())
                return std::nullopt;
            return v;
        }

        class Validator
        {
        public:
            Validator(const Raw &raw, std::vector<io::Diagnostic> &diag) : raw_(raw), diag_(diag) {}

            const std::string *get(const std::string &flag) const
            {
                const auto it = raw_.values.find(flag);
                return it == raw_.values.end() ? nullptr : &it->second;
            }

            void fail(const std::string &message) { diag_.push_back({kArgs, 0, message}); }

            void number(const std::string &flag, double &target, bool positive, bool allow_zero = false)
            {
                const auto *text = get(flag);
                if (!text)
                    return;
                const auto v = io::parse_number(*text);
                if (!v || !std::isfinite(*v))
                    return fail(flag + ": expected a number, got '" + *text + "'");
                if (positive && !(*v > 0.0 || (allow_zero && *v == 0.0)))
                    return fail(flag + (allow_zero ? ": must be >= 0" : ": must be > 0"));
                target = *v;
            }

            void range(const std::string &flag, Range &target)
            {
                const auto *text = get(flag);
                if (!text)
                    return;
                const auto r = parse_range(*text);
                if (!r)
                    return fail(flag + ": expected start:stop:step, got '" + *text + "'");
                if (!(r->step > 0.0))
                    return fail(flag + ": step must be > 0");
                if (!(r->start <= r->stop))
                    return fail(flag + ": start must not exceed stop");
                target = *r;
            }

            void input_file(const std::string &flag, std::filesystem::path &target, bool required)
            {
                const auto *text = get(flag);
                if (!text)
                {
                    if (required)
                        fail("missing required flag " + flag);
                    return;
                }
                target = *text;
                if (!std::filesystem::is_regular_file(target))
                    diag_.push_back({target.string(), 0, "file not found (" + flag + ")"});
            }

            void exec(Exec &target)
            {
                if (const auto *text = get("--exec"))
                {
                    if (*text == "serial")
                        target = Exec::serial;
                    else if (*text == "parallel")
                        target = Exec::parallel;
                    else
                        fail("--exec: expected serial or parallel");
                }
            }

            void rule(RunConfig &cfg)
            {
                const auto *text = get("--rule");
                if (!text)
                    return;
                if (*text == "maximize")
                    cfg.rule = DispersionRule::maximize;
                else if (*text == "delays-only")
                    cfg.rule = DispersionRule::delays_only;
                else if (text->rfind("fixed:", 0) == 0 && io::parse_number(text->substr(6)))
                {
                    cfg.rule = DispersionRule::fixed;
                    cfg.fixed_delta_d = *io::parse_number(text->substr(6));
                }
                else
                    fail("--rule: expected maximize, delays-only or fixed:<value>");
            }

            void reference(RunConfig &cfg)
            {
                if (const auto *text = get("--reference"))
                {
                    if (const auto id = parse_mode_label(*text))
                        cfg.reference = *id;
                    else
                        fail("--reference: invalid mode label '" + *text + "'");
                }
            }

        private:
            const Raw &raw_;
            std::vector<io::Diagnostic> &diag_;
        };

        // Parses referenced input files so content errors surface before any computation.
        void check_contents(const RunConfig &cfg, std::vector<io::Diagnostic> &diag)
        {
            auto attempt = [&](const std::filesystem::path &path, auto &&load)
            {
                if (path.empty() || !std::filesystem::is_regular_file(path))
                    return;
                try
                {
                    load(path);
                }
                catch (const io::ParseError &e)
                {
                    diag.insert(diag.end(), e.diagnostics().begin(), e.diagnostics().end());
                }
                catch (const Error &e)
                {
                    diag.push_back({path.string(), 0, e.what()});
                }
            };
            attempt(cfg.profile, [](const auto &p)
                    { io::load_profile(p); });
            attempt(cfg.graph, [](const auto &p)
                    { io::load_graph(p); });
            attempt(cfg.modes, [](const auto &p)
                    { io::load_mode_table(p); });
            attempt(cfg.placements, [](const auto &p)
                    { io::load_placements(p); });
        }

        std::string fixed(double v, int digits)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", digits, v);
            return buf;
        }

        std::string render(auto &&writer)
        {
            std::ostringstream os;
            writer(os);
            return os.str();
        }

        std::filesystem::path sibling(const std::filesystem::path &primary, const char *name)
        {
            return primary.has_parent_path() ? primary.parent_path() / name : std::filesystem::path(name);
        }

        int run_solve_modes(const RunConfig &cfg, std::ostream &out)
        {
            const auto profile = io::load_profile(cfg.profile);
            SolverOptions options;
            options.scan_points = cfg.scan_points;
            options.exec = cfg.exec;

            std::string csv;
            if (cfg.sweep_nm)
            {
                const auto sweep = sweep_modes(profile, cfg.sweep_nm->start, cfg.sweep_nm->stop, cfg.sweep_nm->step, options);
                csv = render([&](std::ostream &os)
                             { io::write_mode_tables(os, sweep.tables); });
                for (const auto &w : sweep.warnings)
                    out << "warning: " << to_string(w.id) << " at " << io::format_number(w.lambda_nm) << " nm: " << w.message << '\n';
                out << "solved " << sweep.tables.size() << " wavelengths\n";
            }
            else
            {
                const double lambda_nm = cfg.lambda_nm.value_or(1550.0);
                const auto table = find_modes(profile, lambda_nm / 1000.0, options);
                csv = render([&](std::ostream &os)
                             { io::write_mode_table(os, table); });
                const auto &modes = table.modes;
                out << profile.name() << " at " << io::format_number(lambda_nm) << " nm: " << modes.size() << " guided LP modes\n";
                for (const auto &m : modes)
                    out << "  " << to_string(m.id) << "  n_eff " << fixed(m.n_eff, 6) << "  tau-tau_ref "
                        << fixed(m.tau_ps_per_km - modes.front().tau_ps_per_km, 2) << " ps/km  D "
                        << fixed(m.dispersion_ps_per_km_nm, 2) << " ps/(km nm)\n";
                if (modes.size() > 1)
                    out << "  minimum n_eff separation " << io::format_number(table.min_separation()) << '\n';
            }
            io::write_file_atomic(cfg.primary_output(), csv);
            return 0;
        }

        DesignTargets targets_for(const RunConfig &cfg, const ModeTable &table)
        {
            DesignTargets t;
            t.delta_tau_ps_per_km = cfg.delta_tau;
            t.lambda0_um = table.lambda0_um;
            t.rule = cfg.rule;
            t.fixed_delta_d = cfg.fixed_delta_d;
            t.reference = cfg.reference;
            return t;
        }

        int run_design(const RunConfig &cfg, std::ostream &out, std::ostream &err)
        {
            const auto table = io::load_mode_table(cfg.modes);
            const auto graph = io::load_graph(cfg.graph);
            const auto targets = targets_for(cfg, table);
            const auto system = assemble_constraints(graph, table, targets);
            const auto result = solve_placements(system);
            if (!result.ok())
            {
                err << "design: " << result.message << '\n';
                return 2;
            }
            const auto &s = *result.solution;
            const auto positions = lpg_positions(s, graph, cfg.length_km);

            std::ostringstream report;
            report << "TTDL design report\n";
            report << "mode table: " << cfg.modes.filename().string() << " (" << table.modes.size() << " modes, lambda0 = "
                   << io::format_number(table.lambda0_um * 1000.0) << " nm)\n";
            report << "graph: " << cfg.graph.filename().string() << " (" << graph.samples.size() << " samples, "
                   << s.variables.size() << " length variables, " << positions.size() << " LPGs)\n";
            report << "reference mode: " << to_string(s.reference) << "\n";
            report << "dispersion rule: " << to_string(s.rule) << "\n";
            report << "target differential delay: " << io::format_number(cfg.delta_tau) << " ps/km\n";
            report << "achieved differential delay: " << fixed(s.delta_tau, 4) << " ps/km\n";
            report << "incremental dispersion: " << fixed(s.delta_d, 4) << " ps/(km nm)\n";
            report << "max scaled residual: " << io::format_number(s.max_residual) << "\n\n";
            report << "normalized lengths\n";
            for (std::size_t j = 0; j < s.variables.size(); ++j)
                report << "  " << s.variables[j] << "  " << fixed(s.values[j], 6) << '\n';
            report << "\nsamples (delay relative to " << to_string(s.reference) << " in ps/km, dispersion in ps/(km nm))\n";
            for (std::size_t i = 0; i < s.tau_eq.size(); ++i)
                report << "  " << i + 1 << "  " << fixed(s.tau_eq[i], 2) << "  " << fixed(s.dispersion_eq[i], 3) << '\n';
            report << "\nLPG positions for L = " << io::format_number(cfg.length_km) << " km\n";
            for (const auto &p : positions)
                report << "  " << p.junction << "  " << to_string(p.from) << " -> " << to_string(p.to) << "  z = "
                       << fixed(p.z_km, 6) << " km\n";

            const auto primary = cfg.primary_output();
            const auto placements_csv = render([&](std::ostream &os)
                                               { io::write_placements(os, s); });
            const auto lpg_csv = render([&](std::ostream &os)
                                        { io::write_lpg_positions(os, positions); });
            io::write_file_atomic(primary, placements_csv);
            io::write_file_atomic(sibling(primary, "lpg_positions.csv"), lpg_csv);
            io::write_file_atomic(sibling(primary, "design_report.txt"), report.str());
            out << report.str();
            return 0;
        }

        int run_evaluate(const RunConfig &cfg, std::ostream &out)
        {
            const auto solution = io::load_placements(cfg.placements);
            const auto grid = wavelength_grid_nm(cfg.range_nm.start, cfg.range_nm.stop, cfg.range_nm.step);
            DelayCurve curve;
            if (cfg.model == DelayModel::first_order)
                curve = delay_curve_first_order(solution, grid, cfg.exec);
            else
            {
                SolverOptions options;
                options.scan_points = cfg.scan_points;
                options.exec = cfg.exec;
                curve = delay_curve_numeric(solution, io::load_graph(cfg.graph), io::load_profile(cfg.profile), grid, options);
            }
            const auto t = tunability_report(solution, cfg.range_nm.start, cfg.range_nm.stop, cfg.lpg_bandwidth_nm);
            io::write_file_atomic(cfg.primary_output(), render([&](std::ostream &os)
                                                               { io::write_delay_curve(os, curve); }));
            out << "model: " << to_string(curve.model) << '\n';
            out << "differential delay " << fixed(t.min_delta_tau, 3) << " .. " << fixed(t.max_delta_tau, 3) << " ps/km over "
                << io::format_number(t.lambda_start_nm) << "-" << io::format_number(t.lambda_stop_nm) << " nm\n";
            out << "tuning slope (incremental dispersion): " << fixed(t.slope, 4) << " ps/(km nm)\n";
            if (t.outside_bandwidth)
                out << "warning: " << t.warning << '\n';
            return 0;
        }

        int run_rf(const RunConfig &cfg, std::ostream &out)
        {
            const auto solution = io::load_placements(cfg.placements);
            const double lambda_nm = cfg.lambda_nm.value_or(solution.lambda0_um * 1000.0);
            const auto delays = tap_delays_ps(solution, lambda_nm, cfg.length_km);
            auto amplitudes = cfg.amplitudes;
            if (amplitudes.empty())
                amplitudes.assign(delays.size(), 1.0);
            if (amplitudes.size() != delays.size())
                throw DomainError("expected " + std::to_string(delays.size()) + " tap amplitudes, got " +
                                  std::to_string(amplitudes.size()));
            const auto freqs = wavelength_grid_nm(cfg.freq_ghz.start, cfg.freq_ghz.stop, cfg.freq_ghz.step);
            const auto response = rf_response(delays, amplitudes, freqs, cfg.exec);
            io::write_file_atomic(cfg.primary_output(), render([&](std::ostream &os)
                                                               { io::write_rf_response(os, response); }));
            out << "taps (ps):";
            for (const double d : delays)
                out << ' ' << fixed(d, 3);
            out << '\n';
            if (response.fsr_ghz)
                out << "FSR: " << fixed(*response.fsr_ghz, 6) << " GHz\n";
            else
                out << "FSR: not applicable (non-uniform tap spacing)\n";
            return 0;
        }

        int run_perturb(const RunConfig &cfg, std::ostream &out)
        {
            const auto table = io::load_mode_table(cfg.modes);
            const auto graph = io::load_graph(cfg.graph);
            const auto report = perturb_and_redesign(graph, table, targets_for(cfg, table),
                                                     {cfg.sigma, cfg.trials, cfg.seed}, cfg.exec);
            const auto csv = render([&](std::ostream &os)
                                    { io::write_robustness(os, report); });
            io::write_file_atomic(cfg.primary_output(), csv);
            out << "trials: " << report.trials.size() << ", feasible fraction " << io::format_number(report.feasible_fraction)
                << ", median max |dl| " << io::format_number(report.median_max_abs_dl) << '\n';
            return 0;
        }
    }

    std::string to_string(Command command)
    {
        switch (command)
        {
        case Command::solve_modes:
            return "solve-modes";
        case Command::design:
            return "design";
        case Command::evaluate:
            return "evaluate";
        case Command::rf_response:
            return "rf-response";
        case Command::perturb:
        default:
            return "perturb";
        }
    }

    std::optional<Range> parse_range(std::string_view text)
    {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true)
        {
            const auto colon = text.find(':', start);
            const auto v = io::parse_number(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
            if (!v || !std::isfinite(*v))
                return std::nullopt;
            parts.push_back(*v);
            if (colon == std::string_view::npos)
                break;
            start = colon + 1;
        }
        if (parts.size() != 3)
            return std::nullopt;
        return Range{parts[0], parts[1], parts[2]};
    }

    std::filesystem::path RunConfig::primary_output() const
    {
        if (!out.empty())
            return out;
        switch (command)
        {
        case Command::solve_modes:
            return out_dir / "modes.csv";
        case Command::design:
            return out_dir / "placements.csv";
        case Command::evaluate:
            return out_dir / "delay_curve.csv";
        case Command::rf_response:
            return out_dir / "rf_response.csv";
        case Command::perturb:
        default:
            return out_dir / "perturbation.csv";
        }
    }

    ParseOutcome parse_config(const std::vector<std::string> &args, const std::optional<std::string> &env_out_dir)
    {
        ParseOutcome outcome;
        Raw raw;

        CLI::App app{"Few-mode fiber true time delay line design toolkit", "fmf-ttdl"};
        app.require_subcommand(1, 1);
        std::map<std::string, std::map<std::string, std::string>> storage;
        for (const auto &[name, flags] : command_flags())
        {
            auto *sub = app.add_subcommand(name);
            auto &store = storage[name];
            for (const auto &flag : flags)
                sub->add_option(flag.name, store[flag.name], flag.help);
            sub->add_option("--out", store["--out"], "primary output file");
            sub->add_option("--out-dir", store["--out-dir"], "output directory (default $FMF_TTDL_OUT or .)");
        }

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try
        {
            app.parse(std::move(reversed));
        }
        catch (const CLI::CallForHelp &)
        {
            outcome.help = app.help();
            return outcome;
        }
        catch (const CLI::CallForAllHelp &)
        {
            outcome.help = app.help("", CLI::AppFormatMode::All);
            return outcome;
        }
        catch (const CLI::ParseError &e)
        {
            outcome.diagnostics.push_back({kArgs, 0, e.what()});
            return outcome;
        }

        for (const auto *sub : app.get_subcommands())
        {
            raw.command = sub->get_name();
            for (const auto *opt : sub->get_options())
                if (opt->count() > 0)
                    raw.values[opt->get_name()] = storage[raw.command][opt->get_name()];
        }

        RunConfig cfg;
        static const std::map<std::string, Command> commands{{"solve-modes", Command::solve_modes},
                                                             {"design", Command::design},
                                                             {"evaluate", Command::evaluate},
                                                             {"rf-response", Command::rf_response},
                                                             {"perturb", Command::perturb}};
        cfg.command = commands.at(raw.command);

        auto &diag = outcome.diagnostics;
        Validator v(raw, diag);

        if (const auto *dir = v.get("--out-dir"))
            cfg.out_dir = *dir;
        else if (env_out_dir && !env_out_dir->empty())
            cfg.out_dir = *env_out_dir;
        if (const auto *o = v.get("--out"))
            cfg.out = *o;

        v.exec(cfg.exec);
        if (const auto *text = v.get("--scan-points"))
        {
            const auto n = parse_u64(*text);
            if (!n || *n < 500 || *n > 10000000)
                v.fail("--scan-points: expected an integer >= 500");
            else
                cfg.scan_points = static_cast<int>(*n);
        }
        if (v.get("--lambda-nm"))
        {
            double lambda = 0.0;
            v.number("--lambda-nm", lambda, true);
            if (lambda > 0.0)
            {
                if (lambda < kMinWavelengthUm * 1000.0 || lambda > kMaxWavelengthUm * 1000.0)
                    v.fail("--lambda-nm: must lie in [500, 2000] nm");
                else
                    cfg.lambda_nm = lambda;
            }
        }

        switch (cfg.command)
        {
        case Command::solve_modes:
            v.input_file("--profile", cfg.profile, true);
            if (v.get("--sweep-nm"))
            {
                Range r{};
                const auto before = diag.size();
                v.range("--sweep-nm", r);
                if (diag.size() == before)
                    cfg.sweep_nm = r;
            }
            break;
        case Command::design:
        case Command::perturb:
            v.input_file("--modes", cfg.modes, true);
            v.input_file("--graph", cfg.graph, true);
            v.number("--dtau", cfg.delta_tau, true);
            v.rule(cfg);
            v.reference(cfg);
            v.number("--length-km", cfg.length_km, true);
            v.number("--sigma", cfg.sigma, true, true);
            if (const auto *text = v.get("--trials"))
            {
                const auto n = parse_u64(*text);
                if (!n || *n < 1 || *n > 100000000)
                    v.fail("--trials: expected an integer >= 1");
                else
                    cfg.trials = static_cast<int>(*n);
            }
            if (const auto *text = v.get("--seed"))
            {
                if (const auto s = parse_u64(*text))
                    cfg.seed = *s;
                else
                    v.fail("--seed: expected a non-negative integer");
            }
            break;
        case Command::evaluate:
            v.input_file("--placements", cfg.placements, true);
            v.range("--range-nm", cfg.range_nm);
            v.number("--lpg-bandwidth-nm", cfg.lpg_bandwidth_nm, true, true);
            if (const auto *text = v.get("--model"))
            {
                if (*text == "first-order")
                    cfg.model = DelayModel::first_order;
                else if (*text == "numeric")
                    cfg.model = DelayModel::numeric_sweep;
                else
                    v.fail("--model: expected first-order or numeric");
            }
            v.input_file("--profile", cfg.profile, cfg.model == DelayModel::numeric_sweep);
            v.input_file("--graph", cfg.graph, cfg.model == DelayModel::numeric_sweep);
            break;
        case Command::rf_response:
            v.input_file("--placements", cfg.placements, true);
            v.number("--length-km", cfg.length_km, true);
            v.range("--freq-ghz", cfg.freq_ghz);
            if (const auto *text = v.get("--amplitudes"))
            {
                std::string_view rest = *text;
                while (true)
                {
                    const auto comma = rest.find(',');
                    const auto a = io::parse_number(rest.substr(0, comma));
                    if (!a || !(*a >= 0.0) || !std::isfinite(*a))
                    {
                        v.fail("--amplitudes: expected comma-separated non-negative numbers");
                        cfg.amplitudes.clear();
                        break;
                    }
                    cfg.amplitudes.push_back(*a);
                    if (comma == std::string_view::npos)
                        break;
                    rest.remove_prefix(comma + 1);
                }
            }
            break;
        }

        check_contents(cfg, diag);
        io::sort_diagnostics(diag);
        if (diag.empty())
            outcome.config = std::move(cfg);
        return outcome;
    }

    int run_pipeline(const RunConfig &config, std::ostream &out, std::ostream &err)
    {
        const auto stage = to_string(config.command);
        try
        {
            switch (config.command)
            {
            case Command::solve_modes:
                return run_solve_modes(config, out);
            case Command::design:
                return run_design(config, out, err);
            case Command::evaluate:
                return run_evaluate(config, out);
            case Command::rf_response:
                return run_rf(config, out);
            case Command::perturb:
                return run_perturb(config, out);
            }
        }
        catch (const std::exception &e)
        {
            err << stage << ": " << e.what() << '\n';
            return 1;
        }
        return 1;
    }

    int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        std::vector<std::string> args(argv + 1, argv + argc);
        const char *env = std::getenv("FMF_TTDL_OUT");
        const auto parsed = parse_config(args, env ? std::optional<std::string>(env) : std::nullopt);
        if (!parsed.help.empty())
        {
            out << parsed.help;
            return 0;
        }
        if (!parsed.config)
        {
            for (const auto &d : parsed.diagnostics)
                err << d.to_string() << '\n';
            return 2;
        }
        return run_pipeline(*parsed.config, out, err);
    }
}
