// Copyright 2026 The wcnf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: noise statistics, truth simulation, filtering
// experiments and the Fokker-Planck equivalence check.

#include <wcnf/error.hpp>
#include <wcnf/experiments.hpp>
#include <wcnf/io.hpp>
#include <wcnf/noise.hpp>
#include <wcnf/validation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace
{
struct Common
{
        std::string config;
        std::optional<std::uint64_t> seed;
        std::string out = ".";
        std::optional<std::size_t> runs;
        std::optional<double> dt;
        std::optional<double> t_end;
        std::optional<std::string> mode;
};

void add_common(CLI::App* cmd, Common& c)
{
        cmd->add_option("--config", c.config, "JSON experiment file")->check(CLI::ExistingFile);
        cmd->add_option("--seed", c.seed, "master seed");
        cmd->add_option("--out", c.out, "output directory");
        cmd->add_option("--runs", c.runs, "number of runs");
        cmd->add_option("--dt", c.dt, "time step");
        cmd->add_option("--t-end", c.t_end, "horizon");
        cmd->add_option("--mode", c.mode, "coloured|classical|closed-form");
}

wcnf::ExperimentConfig experiment_config(const Common& c, const std::optional<int> set)
{
        if (set && !c.config.empty())
        {
                throw wcnf::ConfigError("--set and --config are mutually exclusive");
        }
        wcnf::ExperimentConfig cfg = c.config.empty() ? wcnf::preset(set.value_or(1)) : wcnf::load_config(c.config);
        if (c.seed)
        {
                cfg.seed = *c.seed;
        }
        if (c.runs)
        {
                cfg.n_runs = *c.runs;
        }
        if (c.t_end)
        {
                cfg.t_end = *c.t_end;
        }
        if (c.dt)
        {
                cfg.dt = *c.dt;
        }
        if (c.mode)
        {
                cfg.mode = wcnf::parse_filter_mode(*c.mode);
        }
        cfg.validate();
        for (const std::string& w : cfg.warnings())
        {
                std::cerr << "warning: " << w << "\n";
        }
        return cfg;
}

std::filesystem::path out_dir(const Common& c)
{
        std::filesystem::path dir(c.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
        {
                throw wcnf::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
        }
        return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
        std::ofstream out(path, std::ios::binary);
        out << text << "\n";
        if (!out)
        {
                throw wcnf::IoError("cannot write '" + path.string() + "'");
        }
}

std::string indexed(const char* stem, const std::size_t i)
{
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem, i);
        return buf;
}

void run_filter(const Common& c, const std::optional<int> set)
{
        const wcnf::ExperimentConfig cfg = experiment_config(c, set);
        const wcnf::MetricsReport report = wcnf::run_experiment(cfg);
        const std::filesystem::path dir = out_dir(c);
        for (std::size_t i = 0; i < report.trajectories.size(); ++i)
        {
                wcnf::export_csv(wcnf::to_series(report.trajectories[i]), dir / indexed("filter", i));
        }
        write_text(dir / "config.json", wcnf::config_to_json(cfg));
        write_text(dir / "metrics.json", report.to_json());
        std::printf("rmse_filter=%.6g rmse_open_loop=%.6g mean_nees=%.4f filter_wins=%zu/%zu clamp_events=%zu\n",
                    report.rmse_filter, report.rmse_open_loop, report.mean_nees, report.filter_wins,
                    report.runs.size(), report.clamp_events);
}

void run_simulate(const Common& c, const std::optional<int> set)
{
        wcnf::ExperimentConfig cfg = experiment_config(c, set);
        cfg.trajectory_runs = cfg.n_runs;
        const wcnf::MetricsReport report = wcnf::run_experiment(cfg);
        const std::filesystem::path dir = out_dir(c);
        for (std::size_t i = 0; i < report.trajectories.size(); ++i)
        {
                const wcnf::FilterTrajectory& tr = report.trajectories[i];
                wcnf::Path path{.times = tr.t, .states = tr.x_true};
                wcnf::ObservationSeries obs{.times = {tr.t.begin(), tr.t.end() - 1},
                                            .increments = {tr.dz.begin(), tr.dz.end() - 1}};
                wcnf::export_csv(wcnf::to_series(path), dir / indexed("path", i));
                wcnf::export_csv(wcnf::to_series(obs), dir / indexed("obs", i));
        }
        write_text(dir / "config.json", wcnf::config_to_json(cfg));
        std::printf("wrote %zu paths to %s\n", report.trajectories.size(), dir.string().c_str());
}

void run_fpe_check(const Common& c, const std::optional<std::size_t> paths)
{
        wcnf::EquivalenceCheckConfig cfg;
        if (c.seed)
        {
                cfg.seed = *c.seed;
        }
        if (paths)
        {
                cfg.n_paths = *paths;
        }
        if (c.t_end)
        {
                cfg.t_end = *c.t_end;
        }
        if (c.dt)
        {
                cfg.dt = *c.dt;
        }
        const wcnf::EquivalenceReport report = wcnf::check_equivalence(cfg);
        const std::filesystem::path dir = out_dir(c);
        wcnf::export_csv(wcnf::to_series(report.coloured), dir / "density_coloured.csv");
        wcnf::export_csv(wcnf::to_series(report.ito), dir / "density_ito.csv");
        wcnf::export_csv(wcnf::to_series(report.fpe), dir / "density_fpe.csv");
        nlohmann::json j{{"l1_coloured_ito", report.l1_coloured_ito},
                         {"l1_coloured_fpe", report.l1_coloured_fpe},
                         {"l1_ito_fpe", report.l1_ito_fpe},
                         {"n_paths", cfg.n_paths},
                         {"n_cells", cfg.n_cells},
                         {"t_end", cfg.t_end},
                         {"seed", cfg.seed}};
        write_text(dir / "metrics.json", j.dump(2));
        std::printf("L1 coloured-ito=%.4f coloured-fpe=%.4f ito-fpe=%.4f\n", report.l1_coloured_ito,
                    report.l1_coloured_fpe, report.l1_ito_fpe);
}
}

int main(int argc, char** argv)
{
        CLI::App app{"Filtering for systems driven by weakly coloured noise"};
        app.require_subcommand(1);

        double D = 5;
        double tau = 0.005;
        auto* stats = app.add_subcommand("stats", "print mu1, mu2 of an Ornstein-Uhlenbeck input");
        stats->add_option("--D", D, "noise intensity");
        stats->add_option("--tau", tau, "correlation time");

        Common common;
        std::optional<int> set;
        std::optional<std::size_t> paths;

        auto* simulate = app.add_subcommand("simulate", "simulate truth paths and observations");
        add_common(simulate, common);
        simulate->add_option("--set", set, "parameter set 1..4");

        auto* filter = app.add_subcommand("filter", "truth, observations, filter and metrics");
        add_common(filter, common);
        filter->add_option("--set", set, "parameter set 1..4");

        auto* fpe = app.add_subcommand("fpe-check", "coloured vs Ito vs Fokker-Planck densities");
        add_common(fpe, common);
        fpe->add_option("--paths", paths, "Monte-Carlo paths");

        auto* duffing = app.add_subcommand("duffing", "filtering experiment on a parameter set");
        add_common(duffing, common);
        duffing->add_option("--set", set, "parameter set 1..4")->required();

        try
        {
                app.parse(argc, argv);
        }
        catch (const CLI::ParseError& e)
        {
                return app.exit(e);
        }

        try
        {
                if (stats->parsed())
                {
                        const wcnf::ColouredStats s = wcnf::ou_stats({.D = D, .tau_cor = tau});
                        std::printf("mu1=%.17g mu2=%.17g\n", s.mu1, s.mu2);
                }
                else if (simulate->parsed())
                {
                        run_simulate(common, set);
                }
                else if (filter->parsed() || duffing->parsed())
                {
                        run_filter(common, set);
                }
                else if (fpe->parsed())
                {
                        run_fpe_check(common, paths);
                }
        }
        catch (const std::exception& e)
        {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 1;
        }
        return 0;
}
