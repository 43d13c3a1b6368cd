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


#include <wcnf/error.hpp>
#include <wcnf/experiments.hpp>
#include <wcnf/io.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

namespace wcnf
{
namespace
{
struct Pinned
{
        int id;
        double D, tau_cor, a, beta, alpha, phi_eta, P0;
};

TEST(Experiments, PresetsMatchPublishedSets)
{
        const Pinned rows[] = {
                {1, 5, 0.005, 0.001, 1e4, -0.001, 1e4, 0.01},
                {2, 5, 0.001, 0.001, 1e4, -0.001, 1e4, 0.1},
                {3, 5, 0.005, 0.001, 1e3, -0.001, 1e3, 0.1},
                {4, 5, 0.005, 0.001, 1e3, -0.001, 1e3, 0.01},
        };
        for (const Pinned& r : rows)
        {
                const ExperimentConfig cfg = preset(r.id);
                EXPECT_EQ(cfg.preset_id, r.id);
                EXPECT_EQ(cfg.params.D, r.D);
                EXPECT_EQ(cfg.params.tau_cor, r.tau_cor);
                EXPECT_EQ(cfg.params.a, r.a);
                EXPECT_EQ(cfg.params.beta, r.beta);
                EXPECT_EQ(cfg.params.alpha, r.alpha);
                EXPECT_EQ(cfg.params.phi_eta, r.phi_eta);
                EXPECT_EQ(cfg.P0, r.P0);
                EXPECT_EQ(cfg.x0, 1.0);
                EXPECT_TRUE(cfg.warnings().empty());
        }
}

TEST(Experiments, UnknownPreset)
{
        EXPECT_THROW((void)preset(5), ConfigError);
        EXPECT_THROW((void)preset(0), ConfigError);
}

TEST(Experiments, BetaWarning)
{
        ExperimentConfig cfg = preset(3);
        cfg.params.beta = 50;
        ASSERT_EQ(cfg.warnings().size(), 1U);
        cfg.params.beta = 100;
        EXPECT_TRUE(cfg.warnings().empty());
}

TEST(Experiments, ConfigParsing)
{
        const ExperimentConfig cfg =
                parse_config(R"({"preset": 2, "n_runs": 7, "seed": 42, "mode": "closed-form", "t_end": 1000, "dt": 10})");
        EXPECT_EQ(cfg.params.tau_cor, 0.001);
        EXPECT_EQ(cfg.n_runs, 7U);
        EXPECT_EQ(cfg.seed, 42U);
        EXPECT_EQ(cfg.mode, FilterMode::DUFFING_CLOSED_FORM);
        EXPECT_EQ(cfg.resolved_dt(), 10);

        const ExperimentConfig round = parse_config(config_to_json(cfg));
        EXPECT_EQ(round.params.beta, cfg.params.beta);
        EXPECT_EQ(round.resolved_t_end(), 1000);

        EXPECT_THROW((void)parse_config(R"({"preset": 1, "gamma": 1})"), ConfigError);
        EXPECT_THROW((void)parse_config(R"({"alpha": -0.001})"), ConfigError);
        EXPECT_THROW((void)parse_config("{not json"), ConfigError);
        EXPECT_THROW((void)parse_config(R"({"preset": 1, "phi_eta": 0})"), ConfigError);
        EXPECT_THROW((void)parse_config(R"({"preset": 1, "P0": -1})"), ConfigError);
        EXPECT_THROW((void)parse_config(R"({"preset": 1, "truth": "exact"})"), ConfigError);
}

TEST(Experiments, DefaultHorizon)
{
        const ExperimentConfig cfg = preset(1);
        EXPECT_DOUBLE_EQ(cfg.resolved_t_end(), ExperimentConfig::HORIZON_FRACTION * 1e4 / 0.001);
        EXPECT_DOUBLE_EQ(cfg.resolved_dt(), cfg.resolved_t_end() / ExperimentConfig::DEFAULT_STEPS);
}

ExperimentConfig small(const int id)
{
        ExperimentConfig cfg = preset(id);
        cfg.n_runs = 6;
        cfg.t_end = cfg.resolved_t_end() / 4;
        cfg.dt = *cfg.t_end / 2000;
        return cfg;
}

TEST(Experiments, SameSeedSameReport)
{
        const ExperimentConfig cfg = small(1);
        EXPECT_EQ(run_experiment(cfg).to_json(), run_experiment(cfg).to_json());
        ExperimentConfig other = cfg;
        other.seed = cfg.seed + 1;
        EXPECT_NE(run_experiment(cfg).to_json(), run_experiment(other).to_json());
}

TEST(Experiments, MaskedObservationsReduceToPrediction)
{
        ExperimentConfig cfg = small(3);
        cfg.params.phi_eta = 1e12;
        const MetricsReport r = run_experiment(cfg);
        EXPECT_NEAR(r.rmse_filter, r.rmse_open_loop, 0.01 * r.rmse_open_loop);
}

TEST(Experiments, ReportIsConsistent)
{
        const ExperimentConfig cfg = small(4);
        const MetricsReport r = run_experiment(cfg);
        ASSERT_EQ(r.runs.size(), cfg.n_runs);
        ASSERT_EQ(r.trajectories.size(), 1U);
        EXPECT_EQ(r.trajectories[0].t.size(), 2001U);
        std::size_t wins = 0;
        for (const RunMetrics& m : r.runs)
        {
                EXPECT_TRUE(std::isfinite(m.rmse_filter));
                EXPECT_GE(m.rmse_open_loop, 0);
                EXPECT_GE(m.min_P, cfg.variance_floor);
                wins += m.filter_wins() ? 1 : 0;
        }
        EXPECT_EQ(wins, r.filter_wins);
        EXPECT_EQ(r.trajectories[0].x_hat[0] != r.trajectories[0].x_true[0], true);
}

TEST(Experiments, ModesAndTruthModelsRun)
{
        for (const FilterMode mode :
             {FilterMode::SECOND_ORDER_COLOURED, FilterMode::SECOND_ORDER_CLASSICAL, FilterMode::DUFFING_CLOSED_FORM})
        {
                ExperimentConfig cfg = small(2);
                cfg.mode = mode;
                EXPECT_NO_THROW((void)run_experiment(cfg)) << to_string(mode);
        }
        ExperimentConfig coloured = preset(3);
        coloured.truth = TruthModel::COLOURED;
        coloured.n_runs = 2;
        coloured.t_end = 10;
        coloured.dt = 0.01;
        const MetricsReport r = run_experiment(coloured);
        EXPECT_EQ(r.trajectories.at(0).t.size(), 1001U);
}

TEST(Experiments, ErrorsCarryRunIndex)
{
        ExperimentConfig cfg = preset(3);
        cfg.x0 = 1e3; // finite-time blow-up well inside the horizon
        cfg.n_runs = 1;
        try
        {
                (void)run_experiment(cfg);
                FAIL() << "expected an error";
        }
        catch (const Error& e)
        {
                EXPECT_EQ(std::string(e.what()).rfind("run 0: ", 0), 0U) << e.what();
        }
}

class CsvTest : public ::testing::Test
{
protected:
        void SetUp() override
        {
                dir_ = std::filesystem::temp_directory_path()
                       / ("wcnf_csv_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
                std::filesystem::create_directories(dir_);
        }

        void TearDown() override
        {
                std::filesystem::remove_all(dir_);
        }

        std::filesystem::path dir_;
};

std::string slurp(const std::filesystem::path& p)
{
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST_F(CsvTest, EmptySeriesWritesHeaderOnly)
{
        export_csv(to_series(Path{}), dir_ / "empty.csv");
        EXPECT_EQ(slurp(dir_ / "empty.csv"), "t,x\n");
}

TEST_F(CsvTest, RoundTripIsBitwise)
{
        const Path p{.times = {0, 0.1, 1.0 / 3},
                     .states = {std::numeric_limits<double>::denorm_min(), -1e300, std::nextafter(1.0, 2.0)}};
        export_csv(to_series(p), dir_ / "p.csv");
        const Series back = read_csv(dir_ / "p.csv");
        ASSERT_EQ(back.columns, (std::vector<std::string>{"t", "x"}));
        EXPECT_EQ(back.data[0], p.times);
        EXPECT_EQ(back.data[1], p.states);
}

TEST_F(CsvTest, FilterTrajectorySchema)
{
        ExperimentConfig cfg = small(1);
        cfg.n_runs = 1;
        const MetricsReport r = run_experiment(cfg);
        export_csv(to_series(r.trajectories.at(0)), dir_ / "f.csv");
        const Series s = read_csv(dir_ / "f.csv");
        EXPECT_EQ(s.columns, (std::vector<std::string>{"t", "x_true", "x_hat", "P", "dz"}));
        EXPECT_EQ(s.rows(), 2001U);
        const std::string text = slurp(dir_ / "f.csv");
        EXPECT_EQ(text.back(), '\n');
}

TEST_F(CsvTest, ObservationAndDensitySchemas)
{
        EXPECT_EQ(to_series(ObservationSeries{}).columns, (std::vector<std::string>{"t", "dz"}));
        const Grid1D g{.spec = {.x_min = 0, .x_max = 1, .n_cells = 2}, .values = {0.5, 1.5}};
        const Series s = to_series(g);
        EXPECT_EQ(s.columns, (std::vector<std::string>{"x", "p"}));
        EXPECT_EQ(s.data[0], (std::vector<double>{0.25, 0.75}));
}

TEST_F(CsvTest, IoErrorsSurface)
{
        EXPECT_THROW(export_csv(to_series(Path{}), dir_ / "missing" / "x.csv"), IoError);
        EXPECT_THROW((void)read_csv(dir_ / "nope.csv"), IoError);
        std::ofstream(dir_ / "bad.csv") << "t,x\n1,abc\n";
        EXPECT_THROW((void)read_csv(dir_ / "bad.csv"), IoError);
}
}
}
