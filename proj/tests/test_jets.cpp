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
#include <wcnf/jet.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace wcnf
{
namespace
{
TEST(Jet, PolynomialMatchesHandDerivatives)
{
        // 2 - x + 3x^3 + 0.5x^4
        const SmoothFn p = SmoothFn::polynomial({2, -1, 0, 3, 0.5});
        const double x = 0.7;
        const Jet4 j = p.jet(x);
        EXPECT_DOUBLE_EQ(j.value, 2 - x + 3 * x * x * x + 0.5 * x * x * x * x);
        EXPECT_DOUBLE_EQ(j.d1, -1 + 9 * x * x + 2 * x * x * x);
        EXPECT_DOUBLE_EQ(j.d2, 18 * x + 6 * x * x);
        EXPECT_DOUBLE_EQ(j.d3, 18 + 12 * x);
        EXPECT_DOUBLE_EQ(j.d4, 12);
        EXPECT_DOUBLE_EQ(p(x), j.value);
}

TEST(Jet, RatioOfExponentials)
{
        // e^x / e^{2x} = e^{-x}: derivatives alternate in sign.
        const double x = 0.3;
        const Jet4 f = exp(Jet4::variable(x));
        const Jet4 g = exp(2.0 * Jet4::variable(x));
        const Jet4 u = ratio_jet(f, g);
        const double e = std::exp(-x);
        EXPECT_NEAR(u.value, e, 1e-14);
        EXPECT_NEAR(u.d1, -e, 1e-14);
        EXPECT_NEAR(u.d2, e, 1e-14);
        EXPECT_NEAR(u.d3, -e, 1e-13);
        EXPECT_NEAR(u.d4, e, 1e-13);
}

TEST(Jet, RatioAgainstCentralDifferences)
{
        // (x^3 - x) / (x + 2), derivatives by 5-point stencils on the value.
        const auto q = [](const double x) { return (x * x * x - x) / (x + 2); };
        const double x = 0.4;
        const double h = 1e-2;
        const double d1 = (q(x - 2 * h) - 8 * q(x - h) + 8 * q(x + h) - q(x + 2 * h)) / (12 * h);
        const double d2 = (-q(x - 2 * h) + 16 * q(x - h) - 30 * q(x) + 16 * q(x + h) - q(x + 2 * h)) / (12 * h * h);
        const Jet4 xv = Jet4::variable(x);
        const Jet4 u = ratio_jet(xv * xv * xv - xv, xv + 2.0);
        EXPECT_NEAR(u.value, q(x), 1e-15);
        EXPECT_NEAR(u.d1, d1, 1e-8);
        EXPECT_NEAR(u.d2, d2, 1e-6);
}

TEST(Jet, RatioThrowsNearZeroDenominator)
{
        const Jet4 f = Jet4::variable(1.0);
        EXPECT_THROW((void)ratio_jet(f, Jet4::constant(1e-13)), SingularityError);
        EXPECT_THROW((void)ratio_jet(f, Jet4::constant(0.0)), SingularityError);
        EXPECT_NO_THROW((void)ratio_jet(f, Jet4::constant(1e-11)));
}

TEST(Jet, ElementaryFunctions)
{
        const double x = 0.9;
        const Jet4 v = Jet4::variable(x);
        const Jet4 s = sin(v);
        EXPECT_NEAR(s.d1, std::cos(x), 1e-15);
        EXPECT_NEAR(s.d3, -std::cos(x), 1e-15);
        EXPECT_NEAR(s.d4, std::sin(x), 1e-15);
        const Jet4 l = log(v);
        EXPECT_NEAR(l.d2, -1 / (x * x), 1e-14);
        EXPECT_NEAR(l.d4, -6 / (x * x * x * x), 1e-13);
        const Jet4 r = sqrt(v);
        EXPECT_NEAR(r.d2, -0.25 * std::pow(x, -1.5), 1e-14);
        const Jet4 c = cos(2.0 * v);
        EXPECT_NEAR(c.d4, 16 * std::cos(2 * x), 1e-13);
        const Jet4 p = pow(v, 3);
        EXPECT_NEAR(p.d3, 6, 1e-14);
        EXPECT_NEAR(p.d4, 0, 1e-14);
}

TEST(Jet, ExpressionFallbackMatchesPolynomial)
{
        const SmoothFn expr = SmoothFn::from_expression([](const auto x) { return x * x * x - 2.0 * x + 1.0; });
        const SmoothFn poly = SmoothFn::polynomial({1, -2, 0, 1});
        for (const double x : {-1.3, 0.0, 0.25, 2.0})
        {
                const Jet4 a = expr.jet(x);
                const Jet4 b = poly.jet(x);
                for (int k = 0; k <= 4; ++k)
                {
                        EXPECT_NEAR(a[k], b[k], 1e-13) << "order " << k << " at " << x;
                }
                EXPECT_DOUBLE_EQ(expr(x), b.value);
        }
}

TEST(Jet, ScaledAndConstant)
{
        const SmoothFn f = SmoothFn::polynomial({0, 0, 1}).scaled(3);
        EXPECT_DOUBLE_EQ(f.jet(2).d1, 12);
        const Jet4 c = SmoothFn::constant(4).jet(1.5);
        EXPECT_EQ(c, Jet4::constant(4));
}

TEST(Jet, ValidateJetDetectsWrongDerivatives)
{
        const SmoothFn good = SmoothFn::from_expression(
                [](const auto x)
                {
                        using std::sin;
                        return sin(x) * x;
                });
        EXPECT_TRUE(validate_jet(good, 0.8, 1e-6));
        const SmoothFn bad(
                [](const double x)
                {
                        Jet4 j = sin(Jet4::variable(x)) * Jet4::variable(x);
                        j.d3 += 0.1;
                        return j;
                });
        EXPECT_FALSE(validate_jet(bad, 0.8, 1e-6));
}

TEST(Jet, NonFiniteDetection)
{
        EXPECT_TRUE(Jet4::variable(1).is_finite());
        EXPECT_FALSE((Jet4{1, NAN, 0, 0, 0}).is_finite());
}
}
}
