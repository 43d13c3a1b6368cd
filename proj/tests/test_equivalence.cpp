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


#include <wcnf/equivalence.hpp>
#include <wcnf/error.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace wcnf
{
namespace
{
TEST(Equivalence, LinearAdditiveCoefficients)
{
        // f = c x, g = sigma: u = c x / sigma, u' = c / sigma, u'' = 0.
        const double c = -0.7;
        const double sigma = 1.3;
        const ColouredStats s{.mu1 = 0.4, .mu2 = 0.01};
        const SystemModel m(SmoothFn::polynomial({0, c}), SmoothFn::constant(sigma));
        const double x = 0.9;
        const KineticValues kv = kinetic_coefficients(m, s, x);
        EXPECT_NEAR(kv.k1, c * x, 1e-15);
        EXPECT_NEAR(kv.k2, s.mu1 * sigma * sigma + 2 * s.mu2 * sigma * sigma * c, 1e-15);
        EXPECT_NEAR(effective_drift(m, s, x), c * x, 1e-15);
        EXPECT_NEAR(effective_diffusion(m, s, x), std::sqrt(kv.k2), 1e-15);
        const FpeDecomposition d = fpe_decomposition(m, s, x);
        EXPECT_NEAR(d.M, c * x, 1e-15);
        EXPECT_NEAR(d.k, kv.k2, 1e-15);
}

TEST(Equivalence, MultiplicativeNoiseInducedDrift)
{
        // White limit (mu2 = 0): k1 = f + mu1 g g' / 2, M = f.
        const ColouredStats s{.mu1 = 0.5, .mu2 = 0};
        const SystemModel m(SmoothFn::polynomial({0, -1}), SmoothFn::polynomial({1, 0.5}));
        const double x = 0.4;
        const double g = 1 + 0.5 * x;
        EXPECT_NEAR(kinetic_coefficients(m, s, x).k1, -x + 0.5 * 0.5 * g * 0.5, 1e-15);
        EXPECT_NEAR(fpe_decomposition(m, s, x).M, -x, 1e-15);
}

TEST(Equivalence, ItoDriftAddsHalfBBPrime)
{
        const ColouredStats s{.mu1 = 0.3, .mu2 = 0.004};
        const SystemModel m(SmoothFn::polynomial({0.1, -1, 0, -1}), SmoothFn::polynomial({2, 1}));
        const EquivalentIto eq = EquivalentIto::from_model(m, s);
        const double x = 0.35;
        const double h = 1e-4;
        const double b_slope = (eq.b(x + h) - eq.b(x - h)) / (2 * h);
        const ItoCoefficients c = eq(x);
        EXPECT_NEAR(c.ito_drift, c.drift + 0.5 * c.diffusion * b_slope, 1e-8);
        EXPECT_NEAR(c.ito_drift, kinetic_coefficients(m, s, x).k1, 1e-13);
}

TEST(Equivalence, AdditiveFactory)
{
        const EquivalentIto eq = EquivalentIto::additive([](const double x) { return -2 * x; }, 0.5);
        const ItoCoefficients c = eq(1.5);
        EXPECT_DOUBLE_EQ(c.drift, -3);
        EXPECT_DOUBLE_EQ(c.ito_drift, -3);
        EXPECT_DOUBLE_EQ(c.diffusion, 0.5);
}

TEST(Equivalence, NegativeRadicandIsAValidityError)
{
        // mu1 + 2 mu2 g u' < 0 when the correlation moment dominates.
        const ColouredStats s{.mu1 = 0.01, .mu2 = 1};
        const SystemModel m(SmoothFn::polynomial({0, -5}), SmoothFn::constant(1));
        EXPECT_THROW((void)effective_diffusion(m, s, 0.2), ValidityError);
}

TEST(Equivalence, SingularAtZeroOfG)
{
        const SystemModel m(SmoothFn::polynomial({0, 1}), SmoothFn::polynomial({0, 1}));
        const ColouredStats s{.mu1 = 1, .mu2 = 0.01};
        EXPECT_THROW((void)kinetic_coefficients(m, s, 0.0), SingularityError);
        EXPECT_NO_THROW((void)kinetic_coefficients(m, s, 0.5));
}

TEST(Equivalence, DomainHandling)
{
        const SystemModel bounded(SmoothFn::polynomial({0, 1}), SmoothFn::constant(1), Domain{.lo = -1, .hi = 1});
        const ColouredStats s{.mu1 = 1, .mu2 = 0};
        EXPECT_THROW((void)kinetic_coefficients(bounded, s, 1.5), DomainError);
        EXPECT_NO_THROW((void)kinetic_coefficients(bounded, s, 0.5));
        EXPECT_THROW(SystemModel(SmoothFn::polynomial({0, 1}), SmoothFn::polynomial({0, 1}), Domain{.lo = -1, .hi = 1}),
                     SingularityError);
}

TEST(Equivalence, KineticCoefficientsFromFunctions)
{
        const KineticCoefficients kc = KineticCoefficients::from_functions(
                [](const double x) { return -x; }, [](const double x) { return 1 + x * x; },
                [](const double x) { return 2 * x; });
        EXPECT_DOUBLE_EQ(kc.M(2), -2 - 1);
        EXPECT_DOUBLE_EQ(kc.k2(2), 5);
}
}
}
