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


#include <wcnf/experiments.hpp>

#include <wcnf/error.hpp>
#include <wcnf/parallel.hpp>
#include <wcnf/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace wcnf
{
std::string_view to_string(const TruthModel t)
{
        switch (t)
        {
        case TruthModel::EQUIVALENT_ITO:
                return "ito";
        case TruthModel::COLOURED:
                return "coloured";
        }
        return "?";
}

TruthModel parse_truth_model(const std::string_view text)
{
        if (text == "ito")
        {
                return TruthModel::EQUIVALENT_ITO;
        }
        if (text == "coloured")
        {
                return TruthModel::COLOURED;
        }
        throw ConfigError("unknown truth model '" + std::string(text) + "' (expected ito|coloured)");
}

std::string_view to_string(const EstimatePolicy p)
{
        switch (p)
        {
        case EstimatePolicy::SAMPLE:
                return "sample";
        case EstimatePolicy::EXACT:
                return "exact";
        }
        return "?";
}

EstimatePolicy parse_estimate_policy(const std::string_view text)
{
        if (text == "sample")
        {
                return EstimatePolicy::SAMPLE;
        }
        if (text == "exact")
        {
                return EstimatePolicy::EXACT;
        }
        throw ConfigError("unknown x_hat0_policy '" + std::string(text) + "' (expected sample|exact)");
}

void ExperimentConfig::validate() const
{
        params.validate();
        if (!(P0 >= 0) || !std::isfinite(P0))
        {
                throw ConfigError("P0 must be finite and >= 0");
        }
        if (!std::isfinite(x0))
        {
                throw ConfigError("x0 must be finite");
        }
        if (n_runs == 0)
        {
                throw ConfigError("n_runs must be positive");
        }
        if (!(variance_floor > 0))
        {
                throw ConfigError("variance_floor must be > 0");
        }
        SimConfig{.dt = resolved_dt(), .t_end = resolved_t_end(), .seed = seed, .n_paths = n_runs}.validate();
}

double ExperimentConfig::resolved_t_end() const
{
        if (t_end)
        {
                return *t_end;
        }
        if (params.alpha == 0)
        {
                throw ConfigError("t_end must be given when alpha = 0");
        }
        return HORIZON_FRACTION * params.beta / std::abs(params.alpha);
}

double ExperimentConfig::resolved_dt() const
{
        return dt ? *dt : resolved_t_end() / static_cast<double>(DEFAULT_STEPS);
}

std::vector<std::string> ExperimentConfig::warnings() const
{
        std::vector<std::string> out;
        if (params.beta < BETA_WARNING)
        {
                std::ostringstream oss;
                oss << "beta = " << params.beta << " < " << BETA_WARNING
                    << ": the overdamped reduction assumes the damping term dominates";
                out.push_back(oss.str());
        }
        return out;
}

ExperimentConfig preset(const int id)
{
        struct Row
        {
                double beta;
                double tau_cor;
                double phi_eta;
                double P0;
        };
        static constexpr std::array<Row, 4> ROWS{{
                {1e4, 0.005, 1e4, 0.01},
                {1e4, 0.001, 1e4, 0.1},
                {1e3, 0.005, 1e3, 0.1},
                {1e3, 0.005, 1e3, 0.01},
        }};
        if (id < 1 || id > static_cast<int>(ROWS.size()))
        {
                throw ConfigError("unknown preset " + std::to_string(id) + " (expected 1..4)");
        }
        const Row& r = ROWS[static_cast<std::size_t>(id - 1)];
        ExperimentConfig cfg;
        cfg.preset_id = id;
        cfg.params = {.alpha = -0.001, .beta = r.beta, .a = 0.001, .D = 5, .tau_cor = r.tau_cor, .phi_eta = r.phi_eta};
        cfg.P0 = r.P0;
        return cfg;
}

namespace
{
using nlohmann::json;

double number(const json& j, const char* key)
{
        const json& v = j.at(key);
        if (!v.is_number())
        {
                throw ConfigError(std::string("config key '") + key + "' must be a number");
        }
        return v.get<double>();
}

std::uint64_t count(const json& j, const char* key)
{
        const json& v = j.at(key);
        if (!v.is_number_unsigned())
        {
                throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
}

std::string text(const json& j, const char* key)
{
        const json& v = j.at(key);
        if (!v.is_string())
        {
                throw ConfigError(std::string("config key '") + key + "' must be a string");
        }
        return v.get<std::string>();
}
}

ExperimentConfig parse_config(const std::string_view json_text)
{
        json j;
        try
        {
                j = json::parse(json_text);
        }
        catch (const json::parse_error& e)
        {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
        {
                throw ConfigError("config must be a JSON object");
        }
        static const std::set<std::string> KEYS{"preset", "alpha",   "beta",          "a",         "D",
                                                "tau_cor", "phi_eta", "P0",            "x0",        "x_hat0_policy",
                                                "dt",      "t_end",   "seed",          "n_runs",    "mode",
                                                "truth",   "variance_floor", "trajectory_runs"};
        for (const auto& item : j.items())
        {
                if (!KEYS.contains(item.key()))
                {
                        throw ConfigError("unknown config key '" + item.key() + "'");
                }
        }

        ExperimentConfig cfg;
        if (j.contains("preset"))
        {
                cfg = preset(static_cast<int>(count(j, "preset")));
        }
        else
        {
                for (const char* key : {"alpha", "beta", "a", "D", "tau_cor", "phi_eta", "P0"})
                {
                        if (!j.contains(key))
                        {
                                throw ConfigError(std::string("config without a preset must set '") + key + "'");
                        }
                }
        }
        const auto set = [&j](const char* key, double& field)
        {
                if (j.contains(key))
                {
                        field = number(j, key);
                }
        };
        set("alpha", cfg.params.alpha);
        set("beta", cfg.params.beta);
        set("a", cfg.params.a);
        set("D", cfg.params.D);
        set("tau_cor", cfg.params.tau_cor);
        set("phi_eta", cfg.params.phi_eta);
        set("P0", cfg.P0);
        set("x0", cfg.x0);
        set("variance_floor", cfg.variance_floor);
        if (j.contains("dt"))
        {
                cfg.dt = number(j, "dt");
        }
        if (j.contains("t_end"))
        {
                cfg.t_end = number(j, "t_end");
        }
        if (j.contains("seed"))
        {
                cfg.seed = count(j, "seed");
        }
        if (j.contains("n_runs"))
        {
                cfg.n_runs = count(j, "n_runs");
        }
        if (j.contains("trajectory_runs"))
        {
                cfg.trajectory_runs = count(j, "trajectory_runs");
        }
        if (j.contains("x_hat0_policy"))
        {
                cfg.x_hat0_policy = parse_estimate_policy(text(j, "x_hat0_policy"));
        }
        if (j.contains("mode"))
        {
                cfg.mode = parse_filter_mode(text(j, "mode"));
        }
        if (j.contains("truth"))
        {
                cfg.truth = parse_truth_model(text(j, "truth"));
        }
        cfg.validate();
        return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
        std::ifstream in(path);
        if (!in)
        {
                throw IoError("cannot open config '" + path.string() + "'");
        }
        std::ostringstream oss;
        oss << in.rdbuf();
        return parse_config(oss.str());
}

std::string config_to_json(const ExperimentConfig& cfg)
{
        json j;
        if (cfg.preset_id)
        {
                j["preset"] = *cfg.preset_id;
        }
        j["alpha"] = cfg.params.alpha;
        j["beta"] = cfg.params.beta;
        j["a"] = cfg.params.a;
        j["D"] = cfg.params.D;
        j["tau_cor"] = cfg.params.tau_cor;
        j["phi_eta"] = cfg.params.phi_eta;
        j["P0"] = cfg.P0;
        j["x0"] = cfg.x0;
        j["x_hat0_policy"] = to_string(cfg.x_hat0_policy);
        j["dt"] = cfg.resolved_dt();
        j["t_end"] = cfg.resolved_t_end();
        j["seed"] = cfg.seed;
        j["n_runs"] = cfg.n_runs;
        j["mode"] = to_string(cfg.mode);
        j["truth"] = to_string(cfg.truth);
        j["variance_floor"] = cfg.variance_floor;
        j["trajectory_runs"] = cfg.trajectory_runs;
        return j.dump(2);
}

std::string MetricsReport::to_json() const
{
        json j;
        j["rmse_filter"] = rmse_filter;
        j["rmse_open_loop"] = rmse_open_loop;
        j["mean_nees"] = mean_nees;
        j["clamp_events"] = clamp_events;
        j["filter_wins"] = filter_wins;
        j["n_runs"] = runs.size();
        json per_run = json::array();
        for (const RunMetrics& r : runs)
        {
                per_run.push_back({{"run", r.run},
                                   {"rmse_filter", r.rmse_filter},
                                   {"rmse_open_loop", r.rmse_open_loop},
                                   {"mean_nees", r.mean_nees},
                                   {"clamp_events", r.clamp_events},
                                   {"early_clamp_events", r.early_clamp_events},
                                   {"min_P", r.min_P}});
        }
        j["runs"] = std::move(per_run);
        return j.dump(2);
}

namespace
{
template <typename E>
void rethrow_if(const Error& e, const std::string& message)
{
        if (dynamic_cast<const E*>(&e) != nullptr)
        {
                throw E(message);
        }
}

[[noreturn]] void rethrow_with_run(const Error& e, const std::size_t run)
{
        const std::string message = "run " + std::to_string(run) + ": " + e.what();
        rethrow_if<SingularityError>(e, message);
        rethrow_if<ValidityError>(e, message);
        rethrow_if<StabilityError>(e, message);
        rethrow_if<NonFiniteError>(e, message);
        rethrow_if<DomainError>(e, message);
        rethrow_if<ConfigError>(e, message);
        throw Error(message);
}

std::vector<double> simulate_truth(const ExperimentConfig& cfg, const SystemModel& model, const ColouredStats& stats,
                                   const std::size_t run)
{
        const double dt = cfg.resolved_dt();
        const double t_end = cfg.resolved_t_end();
        if (cfg.truth == TruthModel::EQUIVALENT_ITO)
        {
                const SimConfig sim{.dt = dt, .t_end = t_end, .seed = cfg.seed, .n_paths = 1};
                return simulate_ito(EquivalentIto::from_model(model, stats), cfg.x0, sim, run).states;
        }
        const OUParams ou = cfg.params.ou();
        const auto substeps = static_cast<std::size_t>(std::ceil(dt / (ou.tau_cor / 10) - 1e-9));
        const SimConfig sim{
                .dt = dt / static_cast<double>(substeps), .t_end = t_end, .seed = cfg.seed, .n_paths = 1};
        Rng noise_init(cfg.seed, Stream::INITIAL_NOISE, run);
        const double xi0 = std::sqrt(ou.stationary_variance()) * noise_init.normal();
        const std::vector<double> fine = simulate_coloured(model, ou, xi0, cfg.x0, sim, run).x.states;
        std::vector<double> coarse;
        coarse.reserve(fine.size() / substeps + 1);
        for (std::size_t k = 0; k < fine.size(); k += substeps)
        {
                coarse.push_back(fine[k]);
        }
        return coarse;
}

struct RunResult final
{
        RunMetrics metrics;
        double se_filter = 0;
        double se_open_loop = 0;
        std::optional<FilterTrajectory> trajectory;
};

RunResult run_once(const ExperimentConfig& cfg, const std::size_t run)
{
        const SystemModel model = duffing_system(cfg.params);
        const ObservationModel obs = duffing_observation(cfg.params);
        const ColouredStats stats = ou_stats(cfg.params.ou());
        const double dt = cfg.resolved_dt();

        Path truth;
        truth.states = simulate_truth(cfg, model, stats, run);
        truth.times.resize(truth.states.size());
        for (std::size_t k = 0; k < truth.times.size(); ++k)
        {
                truth.times[k] = static_cast<double>(k) * dt;
        }
        const ObservationSeries dz = simulate_observations(truth, obs, cfg.seed, run);

        double x_hat0 = cfg.x0;
        if (cfg.x_hat0_policy == EstimatePolicy::SAMPLE)
        {
                Rng est(cfg.seed, Stream::ESTIMATE, run);
                x_hat0 += std::sqrt(cfg.P0) * est.normal();
        }

        FilterOptions filter_opts;
        filter_opts.variance_floor = cfg.variance_floor;
        filter_opts.mode = cfg.mode;
        if (cfg.mode == FilterMode::DUFFING_CLOSED_FORM)
        {
                filter_opts.duffing = cfg.params;
        }
        FilterOptions open_opts = filter_opts;
        open_opts.measurement_update = false;

        RunResult result;
        RunMetrics& m = result.metrics;
        m.run = run;
        m.min_P = std::numeric_limits<double>::infinity();
        const bool keep = run < cfg.trajectory_runs;
        if (keep)
        {
                result.trajectory.emplace();
        }

        FilterState fs{.t = 0, .x_hat = x_hat0, .P = cfg.P0};
        FilterState os = fs;
        double nees = 0;
        const std::size_t n = dz.increments.size();
        for (std::size_t k = 0; k <= n; ++k)
        {
                const double x = truth.states[k];
                const double ef = x - fs.x_hat;
                const double eo = x - os.x_hat;
                result.se_filter += ef * ef;
                result.se_open_loop += eo * eo;
                nees += ef * ef / std::max(fs.P, cfg.variance_floor);
                m.min_P = std::min(m.min_P, fs.P);
                if (keep)
                {
                        FilterTrajectory& tr = *result.trajectory;
                        tr.t.push_back(truth.times[k]);
                        tr.x_true.push_back(x);
                        tr.x_hat.push_back(fs.x_hat);
                        tr.P.push_back(fs.P);
                        tr.dz.push_back(k < n ? dz.increments[k] : 0.0);
                }
                if (k == n)
                {
                        break;
                }
                GuardReport guard;
                fs = filter_step(fs, dz.increments[k], dt, model, stats, obs, filter_opts, &guard);
                if (guard.clamped)
                {
                        ++(k + 1 <= RunMetrics::CLAMP_GRACE_STEPS ? m.early_clamp_events : m.clamp_events);
                }
                os = filter_step(os, dz.increments[k], dt, model, stats, obs, open_opts);
        }
        const auto samples = static_cast<double>(n + 1);
        m.rmse_filter = std::sqrt(result.se_filter / samples);
        m.rmse_open_loop = std::sqrt(result.se_open_loop / samples);
        m.mean_nees = nees / samples;
        return result;
}
}

MetricsReport run_experiment(const ExperimentConfig& cfg)
{
        cfg.validate();
        std::vector<RunResult> results(cfg.n_runs);
        parallel_for(cfg.n_runs,
                     [&](const std::size_t run)
                     {
                             try
                             {
                                     results[run] = run_once(cfg, run);
                             }
                             catch (const Error& e)
                             {
                                     rethrow_with_run(e, run);
                             }
                     });

        const SimConfig grid{.dt = cfg.resolved_dt(), .t_end = cfg.resolved_t_end(), .seed = cfg.seed, .n_paths = 1};
        const double samples = static_cast<double>(cfg.n_runs * (grid.steps() + 1));

        MetricsReport report;
        double se_f = 0;
        double se_o = 0;
        double nees = 0;
        for (RunResult& r : results)
        {
                se_f += r.se_filter;
                se_o += r.se_open_loop;
                nees += r.metrics.mean_nees;
                report.clamp_events += r.metrics.clamp_events;
                report.filter_wins += r.metrics.filter_wins() ? 1 : 0;
                report.runs.push_back(r.metrics);
                if (r.trajectory)
                {
                        report.trajectories.push_back(std::move(*r.trajectory));
                }
        }
        report.rmse_filter = std::sqrt(se_f / samples);
        report.rmse_open_loop = std::sqrt(se_o / samples);
        report.mean_nees = nees / static_cast<double>(cfg.n_runs);
        return report;
}
}
