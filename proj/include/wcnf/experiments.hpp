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


#pragma once

#include <wcnf/filter.hpp>
#include <wcnf/io.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wcnf
{
/// How the true state is generated.
enum class TruthModel
{
        EQUIVALENT_ITO, // dx = k1 dt + b dB, any dt
        COLOURED,       // (x, xi) Euler at dt / substeps <= tau_cor / 10
};

/// Initial filter estimate.
enum class EstimatePolicy
{
        SAMPLE, // x_hat0 ~ N(x0, P0)
        EXACT,  // x_hat0 = x0
};

[[nodiscard]] std::string_view to_string(TruthModel t);
[[nodiscard]] TruthModel parse_truth_model(std::string_view text);
[[nodiscard]] std::string_view to_string(EstimatePolicy p);
[[nodiscard]] EstimatePolicy parse_estimate_policy(std::string_view text);

struct ExperimentConfig final
{
        std::optional<int> preset_id;
        DuffingParams params;
        double P0 = 0.01;
        double x0 = 1;
        EstimatePolicy x_hat0_policy = EstimatePolicy::SAMPLE;
        /// Unset: DEFAULT_STEPS steps over t_end.
        std::optional<double> dt;
        /// Unset: HORIZON_FRACTION * beta / |alpha|.
        std::optional<double> t_end;
        std::uint64_t seed = 1;
        std::size_t n_runs = 100;
        FilterMode mode = FilterMode::SECOND_ORDER_COLOURED;
        TruthModel truth = TruthModel::EQUIVALENT_ITO;
        double variance_floor = 1e-12;
        /// Number of leading runs whose trajectories are kept for CSV output.
        std::size_t trajectory_runs = 1;

        static constexpr double HORIZON_FRACTION = 0.03;
        static constexpr std::size_t DEFAULT_STEPS = 20000;
        static constexpr double BETA_WARNING = 100;

        void validate() const;

        [[nodiscard]] double resolved_t_end() const;
        [[nodiscard]] double resolved_dt() const;

        /// Non-fatal validity flags (beta below the adiabatic-elimination
        /// threshold).
        [[nodiscard]] std::vector<std::string> warnings() const;
};

/// Parameter sets 1..4 with the documented defaults for everything else.
/// Throws ConfigError for any other id.
[[nodiscard]] ExperimentConfig preset(int id);

/// JSON object with optional keys
///   preset, alpha, beta, a, D, tau_cor, phi_eta, P0, x0, x_hat0_policy,
///   dt, t_end, seed, n_runs, mode, truth, variance_floor, trajectory_runs.
/// A preset is applied first and the remaining keys override it; without a
/// preset, alpha, beta, a, D, tau_cor, phi_eta and P0 are required.
[[nodiscard]] ExperimentConfig parse_config(std::string_view json_text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);
[[nodiscard]] std::string config_to_json(const ExperimentConfig& cfg);

struct RunMetrics final
{
        std::size_t run = 0;
        double rmse_filter = 0;
        double rmse_open_loop = 0;
        double mean_nees = 0;
        std::size_t clamp_events = 0;       // after the first CLAMP_GRACE_STEPS
        std::size_t early_clamp_events = 0; // within them
        double min_P = 0;

        static constexpr std::size_t CLAMP_GRACE_STEPS = 10;

        [[nodiscard]] bool filter_wins() const
        {
                return rmse_filter < rmse_open_loop;
        }
};

struct MetricsReport final
{
        /// Root mean square over every run and time sample.
        double rmse_filter = 0;
        double rmse_open_loop = 0;
        /// Average over runs of the time-averaged (x - x_hat)^2 / P.
        double mean_nees = 0;
        std::size_t clamp_events = 0;
        std::size_t filter_wins = 0;
        std::vector<RunMetrics> runs;
        /// Filter trajectories of the first trajectory_runs runs.
        std::vector<FilterTrajectory> trajectories;

        [[nodiscard]] std::string to_json() const;
};

/// For each run: simulate the truth, observe it through h(x) = x, run the
/// filter and the open-loop predictor, and score both. Runs execute
/// concurrently on per-run substreams of cfg.seed; the report does not
/// depend on the thread count. Errors are rethrown with the run index.
[[nodiscard]] MetricsReport run_experiment(const ExperimentConfig& cfg);
}
