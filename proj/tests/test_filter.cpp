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
#include <wcnf/filter.hpp>
#include <wcnf/sde.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace wcnf
{
namespace
{
TEST(Filter, VarianceGuard)
{
        const FilterOptions opts;
        EXPECT_EQ(variance_guard(-1e-9, opts), 1e-12);
        EXPECT_EQ(variance_guard(0.5, opts), 0.5);
        EXPECT_EQ(variance_guard(std::numeric_limits<double>::quiet_NaN(), opts), 1e-12);
}

TEST(Filter, ModeNames)
{
        for (const FilterMode m :
             {FilterMode::SECOND_ORDER_COLOURED, FilterMode::SECOND_ORDER_CLASSICAL, FilterMode::DUFFING_CLOSED_FORM})
        {
                EXPECT_EQ(parse_filter_mode(to_string(m)), m);
        }
        EXPECT_THROW((void)parse_filter_mode("extended"), ConfigError);
}

TEST(Filter, ClosedFormModeNeedsParameters)
{
        FilterOptions opts;
        opts.mode = FilterMode::DUFFING_CLOSED_FORM;
        EXPECT_THROW(opts.validate(), ConfigError);
        opts.duffing = DuffingParams{};
        EXPECT_NO_THROW(opts.validate());
}

TEST(Filter, ClosedFormTracksGenericStep)
{
        const DuffingParams p{.beta = 1e3, .phi_eta = 1e3};
        const SystemModel m = duffing_system(p);
        const ObservationModel obs = duffing_observation(p);
        const ColouredStats s = ou_stats(p.ou());
        FilterOptions generic;
        FilterOptions closed;
        closed.mode = FilterMode::DUFFING_CLOSED_FORM;
        closed.duffing = p;
        const SimConfig cfg{.dt = 1, .t_end = 2000, .seed = 2};
        const Path truth = simulate_ito(EquivalentIto::from_model(m, s), 1, cfg);
        const ObservationSeries dz = simulate_observations(truth, obs, cfg.seed);
        FilterState a{.t = 0, .x_hat = 1.1, .P = 0.1};
        FilterState b = a;
        for (const double inc : dz.increments)
        {
                a = filter_step(a, inc, cfg.dt, m, s, obs, generic);
                b = filter_step(b, inc, cfg.dt, m, s, obs, closed);
                ASSERT_NEAR(a.x_hat, b.x_hat, 1e-10 * std::abs(b.x_hat));
                ASSERT_NEAR(a.P, b.P, 1e-10 * b.P);
        }
}

TEST(Filter, LinearMeasurementUpdate)
{
        // f = 0, g = 0 apart from a tiny constant, h = x: a pure Kalman-Bucy update.
        const SystemModel m(SmoothFn::constant(0), SmoothFn::constant(1));
        const ColouredStats s{.mu1 = 0, .mu2 = 0};
        const ObservationModel obs = ObservationModel::linear(2);
        const FilterState st{.t = 0, .x_hat = 1, .P = 0.5};
        const FilterState next = filter_step(st, 0.3, 0.1, m, s, obs, FilterOptions{});
        EXPECT_DOUBLE_EQ(next.x_hat, 1 + 0.5 / 2 * (0.3 - 1 * 0.1));
        EXPECT_DOUBLE_EQ(next.P, 0.5 - 0.25 / 2 * 0.1);
        EXPECT_DOUBLE_EQ(next.t, 0.1);
}

TEST(Filter, OpenLoopIgnoresObservations)
{
        const DuffingParams p;
        const SystemModel m = duffing_system(p);
        const ObservationModel obs = duffing_observation(p);
        const ColouredStats s = ou_stats(p.ou());
        FilterOptions opts;
        opts.measurement_update = false;
        const FilterState st{.t = 0, .x_hat = 1, .P = 0.01};
        const FilterState a = filter_step(st, 0.0, 10, m, s, obs, opts);
        const FilterState b = filter_step(st, 123.0, 10, m, s, obs, opts);
        EXPECT_EQ(a.x_hat, b.x_hat);
        EXPECT_EQ(a.P, b.P);
        EXPECT_DOUBLE_EQ(a.P, 0.01 + duffing_variance_drift(p, 1, 0.01, false) * 10);
}

TEST(Filter, ForcingDroppedForNonlinearSensor)
{
        // h = x^2 with a large negative innovation would drive P negative.
        const SystemModel m(SmoothFn::constant(0), SmoothFn::constant(1));
        const ColouredStats s{.mu1 = 0, .mu2 = 0};
        const ObservationModel obs{.h = SmoothFn::polynomial({0, 0, 1}), .phi_eta = 0.01};
        const FilterState st{.t = 0, .x_hat = 0.1, .P = 1};
        GuardReport report;
        const FilterState next = filter_step(st, -10, 1e-3, m, s, obs, FilterOptions{}, &report);
        EXPECT_TRUE(report.forcing_dropped);
        EXPECT_GE(next.P, 1e-12);
}

TEST(Filter, ClampIsReported)
{
        const SystemModel m(SmoothFn::constant(0), SmoothFn::constant(1));
        const ColouredStats s{.mu1 = 0, .mu2 = 0};
        const ObservationModel obs = ObservationModel::linear(1e-6);
        GuardReport report;
        const FilterState next = filter_step({.t = 0, .x_hat = 0, .P = 1}, 0, 1, m, s, obs, FilterOptions{}, &report);
        EXPECT_TRUE(report.clamped);
        EXPECT_EQ(next.P, 1e-12);
}

TEST(Filter, NonFiniteInputNamesTheTerm)
{
        const DuffingParams p;
        const SystemModel m = duffing_system(p);
        const ObservationModel obs = duffing_observation(p);
        try
        {
                (void)filter_step({.t = 0, .x_hat = 1, .P = 0.1}, std::numeric_limits<double>::quiet_NaN(), 1, m,
                                  ou_stats(p.ou()), obs, FilterOptions{});
                FAIL() << "expected NonFiniteError";
        }
        catch (const NonFiniteError& e)
        {
                EXPECT_NE(std::string(e.what()).find("innovation"), std::string::npos);
        }
}

TEST(Filter, SingularAtZeroEstimate)
{
        const DuffingParams p;
        EXPECT_THROW((void)filter_step({.t = 0, .x_hat = 0, .P = 0.1}, 0, 1, duffing_system(p), ou_stats(p.ou()),
                                       duffing_observation(p), FilterOptions{}),
                     SingularityError);
}

TEST(Filter, SecondOrderTermsOfCubic)
{
        // White noise, g = 1: a = f, k2 = mu1.
        const SystemModel m(SmoothFn::polynomial({0, -1, 0, -1}), SmoothFn::constant(1));
        const SecondOrderTerms t = second_order_terms(m, {.mu1 = 0.3, .mu2 = 0}, 0.5);
        EXPECT_NEAR(t.a, -0.5 - 0.125, 1e-15);
        EXPECT_NEAR(t.a1, -1 - 0.75, 1e-15);
        EXPECT_NEAR(t.a2, -3, 1e-15);
        EXPECT_NEAR(t.k2, 0.3, 1e-15);
        EXPECT_NEAR(t.half_k2_2, 0, 1e-15);
}
}
}
