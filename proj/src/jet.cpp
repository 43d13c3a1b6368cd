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

#include <wcnf/jet.hpp>

#include <wcnf/error.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wcnf
{
namespace
{
using Coefficients = std::array<double, 5>;

// 9-point central stencils on offsets -4..4 (Fornberg).
constexpr std::array<double, 9> STENCIL_D1 = {1.0 / 280, -4.0 / 105, 1.0 / 5,   -4.0 / 5, 0,
                                              4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
constexpr std::array<double, 9> STENCIL_D2 = {-1.0 / 560, 8.0 / 315, -1.0 / 5,  8.0 / 5,   -205.0 / 72,
                                              8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
constexpr std::array<double, 9> STENCIL_D3 = {-7.0 / 240,  3.0 / 10,  -169.0 / 120, 61.0 / 30, 0,
                                              -61.0 / 30, 169.0 / 120, -3.0 / 10,  7.0 / 240};
constexpr std::array<double, 9> STENCIL_D4 = {7.0 / 240,  -2.0 / 5, 169.0 / 60, -122.0 / 15, 91.0 / 8,
                                              -122.0 / 15, 169.0 / 60, -2.0 / 5,  7.0 / 240};
}

bool Jet4::is_finite() const
{
        return std::isfinite(value) && std::isfinite(d1) && std::isfinite(d2) && std::isfinite(d3)
               && std::isfinite(d4);
}

Jet4 operator+(const Jet4& a, const Jet4& b)
{
        return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3, a.d4 + b.d4};
}

Jet4 operator-(const Jet4& a, const Jet4& b)
{
        return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3, a.d4 - b.d4};
}

Jet4 operator-(const Jet4& a)
{
        return {-a.value, -a.d1, -a.d2, -a.d3, -a.d4};
}

Jet4 operator*(const Jet4& a, const Jet4& b)
{
        // Leibniz rule
        return {
                a.value * b.value,
                a.d1 * b.value + a.value * b.d1,
                a.d2 * b.value + 2 * a.d1 * b.d1 + a.value * b.d2,
                a.d3 * b.value + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.value * b.d3,
                a.d4 * b.value + 4 * a.d3 * b.d1 + 6 * a.d2 * b.d2 + 4 * a.d1 * b.d3 + a.value * b.d4,
        };
}

Jet4 operator*(const double s, const Jet4& a)
{
        return {s * a.value, s * a.d1, s * a.d2, s * a.d3, s * a.d4};
}

Jet4 operator*(const Jet4& a, const double s)
{
        return s * a;
}

Jet4 operator+(const Jet4& a, const double s)
{
        return {a.value + s, a.d1, a.d2, a.d3, a.d4};
}

Jet4 operator+(const double s, const Jet4& a)
{
        return a + s;
}

Jet4 operator-(const Jet4& a, const double s)
{
        return {a.value - s, a.d1, a.d2, a.d3, a.d4};
}

Jet4 operator-(const double s, const Jet4& a)
{
        return {s - a.value, -a.d1, -a.d2, -a.d3, -a.d4};
}

Jet4 operator/(const Jet4& a, const Jet4& b)
{
        return ratio_jet(a, b);
}

Jet4 operator/(const Jet4& a, const double s)
{
        return {a.value / s, a.d1 / s, a.d2 / s, a.d3 / s, a.d4 / s};
}

Jet4 operator/(const double s, const Jet4& a)
{
        return ratio_jet(Jet4::constant(s), a);
}

Jet4 ratio_jet(const Jet4& f, const Jet4& g, const double threshold)
{
        if (!(std::abs(g.value) >= threshold))
        {
                std::ostringstream oss;
                oss << "division by a vanishing denominator: |g| = " << std::abs(g.value) << " < " << threshold;
                throw SingularityError(oss.str());
        }

        // f = q g differentiated n times, solved for q^(n)
        const double g0 = g.value;
        const double q0 = f.value / g0;
        const double q1 = (f.d1 - q0 * g.d1) / g0;
        const double q2 = (f.d2 - 2 * q1 * g.d1 - q0 * g.d2) / g0;
        const double q3 = (f.d3 - 3 * q2 * g.d1 - 3 * q1 * g.d2 - q0 * g.d3) / g0;
        const double q4 = (f.d4 - 4 * q3 * g.d1 - 6 * q2 * g.d2 - 4 * q1 * g.d3 - q0 * g.d4) / g0;
        return {q0, q1, q2, q3, q4};
}

Jet4 compose(const std::array<double, 5>& h, const Jet4& u)
{
        const double u1 = u.d1;
        const double u2 = u.d2;
        const double u3 = u.d3;
        const double u4 = u.d4;
        const double u1s = u1 * u1;
        return {
                h[0],
                h[1] * u1,
                h[2] * u1s + h[1] * u2,
                h[3] * u1s * u1 + 3 * h[2] * u1 * u2 + h[1] * u3,
                h[4] * u1s * u1s + 6 * h[3] * u1s * u2 + h[2] * (3 * u2 * u2 + 4 * u1 * u3) + h[1] * u4,
        };
}

Jet4 exp(const Jet4& a)
{
        const double e = std::exp(a.value);
        return compose({e, e, e, e, e}, a);
}

Jet4 log(const Jet4& a)
{
        const double x = a.value;
        return compose({std::log(x), 1 / x, -1 / (x * x), 2 / (x * x * x), -6 / (x * x * x * x)}, a);
}

Jet4 sin(const Jet4& a)
{
        const double s = std::sin(a.value);
        const double c = std::cos(a.value);
        return compose({s, c, -s, -c, s}, a);
}

Jet4 cos(const Jet4& a)
{
        const double s = std::sin(a.value);
        const double c = std::cos(a.value);
        return compose({c, -s, -c, s, c}, a);
}

Jet4 sqrt(const Jet4& a)
{
        const double r = std::sqrt(a.value);
        const double x = a.value;
        return compose({r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x), -0.9375 / (r * x * x * x)}, a);
}

Jet4 pow(const Jet4& a, const int n)
{
        if (n == 0)
        {
                return Jet4::constant(1);
        }
        if (n < 0)
        {
                return 1.0 / pow(a, -n);
        }
        Jet4 result = a;
        for (int i = 1; i < n; ++i)
        {
                result = result * a;
        }
        return result;
}

SmoothFn::SmoothFn()
        : SmoothFn(
                [](double)
                {
                        return Jet4::constant(0);
                },
                [](double)
                {
                        return 0.0;
                },
                "zero")
{
}

SmoothFn::SmoothFn(JetFn jet, ValueFn value, std::string name)
        : jet_(std::move(jet)),
          value_(std::move(value)),
          name_(std::move(name))
{
        if (!jet_)
        {
                throw ConfigError("SmoothFn requires a jet evaluator");
        }
}

SmoothFn SmoothFn::constant(const double c)
{
        return SmoothFn(
                [c](double)
                {
                        return Jet4::constant(c);
                },
                [c](double)
                {
                        return c;
                },
                "constant");
}

SmoothFn SmoothFn::polynomial(std::vector<double> coefficients)
{
        if (coefficients.empty())
        {
                coefficients.push_back(0);
        }
        auto shared = std::make_shared<const std::vector<double>>(std::move(coefficients));

        auto jet = [shared](const double x)
        {
                // Taylor coefficients at x by repeated synthetic division.
                std::array<double, 16> small{};
                std::vector<double> large;
                const std::size_t n = shared->size();
                double* a = nullptr;
                if (n <= small.size())
                {
                        std::copy(shared->begin(), shared->end(), small.begin());
                        a = small.data();
                }
                else
                {
                        large = *shared;
                        a = large.data();
                }
                const std::size_t orders = std::min<std::size_t>(5, n);
                for (std::size_t j = 0; j < orders; ++j)
                {
                        for (std::size_t k = n - 1; k > j; --k)
                        {
                                a[k - 1] += x * a[k];
                        }
                }
                Coefficients t{};
                for (std::size_t j = 0; j < orders; ++j)
                {
                        t[j] = a[j];
                }
                return Jet4{t[0], t[1], 2 * t[2], 6 * t[3], 24 * t[4]};
        };

        auto value = [shared](const double x)
        {
                double r = 0;
                for (auto it = shared->rbegin(); it != shared->rend(); ++it)
                {
                        r = r * x + *it;
                }
                return r;
        };

        return SmoothFn(std::move(jet), std::move(value), "polynomial");
}

SmoothFn SmoothFn::scaled(const double c) const
{
        JetFn jet = jet_;
        ValueFn value = value_;
        return SmoothFn(
                [jet, c](const double x)
                {
                        return c * jet(x);
                },
                value ? ValueFn(
                                [value, c](const double x)
                                {
                                        return c * value(x);
                                })
                      : ValueFn(
                                [jet, c](const double x)
                                {
                                        return c * jet(x).value;
                                }),
                name_);
}

std::array<double, 4> finite_difference_derivatives(const SmoothFn& fn, const double x, const double step)
{
        std::array<double, 9> samples{};
        for (int i = 0; i < 9; ++i)
        {
                samples[i] = fn(x + (i - 4) * step);
        }
        const auto apply = [&](const std::array<double, 9>& stencil)
        {
                double s = 0;
                for (int i = 0; i < 9; ++i)
                {
                        s += stencil[i] * samples[i];
                }
                return s;
        };
        const double h2 = step * step;
        return {apply(STENCIL_D1) / step, apply(STENCIL_D2) / h2, apply(STENCIL_D3) / (h2 * step),
                apply(STENCIL_D4) / (h2 * h2)};
}

bool validate_jet(const SmoothFn& fn, const double x, const double tol)
{
        const double step = 0.02 * std::max(1.0, std::abs(x));
        const Jet4 jet = fn.jet(x);
        if (!jet.is_finite())
        {
                return false;
        }
        const std::array<double, 4> fd = finite_difference_derivatives(fn, x, step);
        const std::array<double, 4> analytic = {jet.d1, jet.d2, jet.d3, jet.d4};
        for (std::size_t i = 0; i < 4; ++i)
        {
                const double scale = std::max(1.0, std::abs(analytic[i]));
                if (!(std::abs(fd[i] - analytic[i]) <= tol * scale))
                {
                        return false;
                }
        }
        return true;
}
}
