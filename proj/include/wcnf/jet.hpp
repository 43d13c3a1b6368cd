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

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wcnf
{
inline constexpr double DEFAULT_SINGULARITY_THRESHOLD = 1e-12;

/// Value of a scalar function together with its first four derivatives
/// at one point. Arithmetic on jets follows the Leibniz and Faa di Bruno
/// rules truncated at order 4, so composing jets is forward-mode
/// differentiation of the composed expression.
struct Jet4 final
{
        double value = 0;
        double d1 = 0;
        double d2 = 0;
        double d3 = 0;
        double d4 = 0;

        [[nodiscard]] static constexpr Jet4 constant(const double c)
        {
                return {c, 0, 0, 0, 0};
        }

        /// The identity function seeded at x.
        [[nodiscard]] static constexpr Jet4 variable(const double x)
        {
                return {x, 1, 0, 0, 0};
        }

        [[nodiscard]] constexpr double operator[](const int order) const
        {
                switch (order)
                {
                case 0:
                        return value;
                case 1:
                        return d1;
                case 2:
                        return d2;
                case 3:
                        return d3;
                default:
                        return d4;
                }
        }

        [[nodiscard]] bool is_finite() const;

        friend constexpr bool operator==(const Jet4&, const Jet4&) = default;
};

Jet4 operator+(const Jet4& a, const Jet4& b);
Jet4 operator-(const Jet4& a, const Jet4& b);
Jet4 operator-(const Jet4& a);
Jet4 operator*(const Jet4& a, const Jet4& b);
Jet4 operator*(double s, const Jet4& a);
Jet4 operator*(const Jet4& a, double s);
Jet4 operator+(const Jet4& a, double s);
Jet4 operator+(double s, const Jet4& a);
Jet4 operator-(const Jet4& a, double s);
Jet4 operator-(double s, const Jet4& a);
Jet4 operator/(const Jet4& a, const Jet4& b);
Jet4 operator/(const Jet4& a, double s);
Jet4 operator/(double s, const Jet4& a);

/// Jet of f/g by the quotient rule through order 4.
/// Throws SingularityError when |g| < threshold.
[[nodiscard]] Jet4 ratio_jet(const Jet4& f, const Jet4& g, double threshold = DEFAULT_SINGULARITY_THRESHOLD);

/// Outer function applied to a jet. `outer` holds h(u), h'(u), ..., h''''(u)
/// evaluated at u = inner.value.
[[nodiscard]] Jet4 compose(const std::array<double, 5>& outer, const Jet4& inner);

Jet4 exp(const Jet4& a);
Jet4 log(const Jet4& a);
Jet4 sin(const Jet4& a);
Jet4 cos(const Jet4& a);
Jet4 sqrt(const Jet4& a);
Jet4 pow(const Jet4& a, int n);

/// A scalar smooth function evaluated as a Jet4. A separate value-only path
/// may be supplied so that simulators do not pay for derivatives.
class SmoothFn final
{
public:
        using JetFn = std::function<Jet4(double)>;
        using ValueFn = std::function<double(double)>;

        SmoothFn();
        explicit SmoothFn(JetFn jet, ValueFn value = {}, std::string name = {});

        [[nodiscard]] Jet4 jet(double x) const
        {
                return jet_(x);
        }

        [[nodiscard]] double operator()(double x) const
        {
                return value_ ? value_(x) : jet_(x).value;
        }

        [[nodiscard]] const std::string& name() const
        {
                return name_;
        }

        [[nodiscard]] static SmoothFn constant(double c);

        /// sum_k coefficients[k] * x^k
        [[nodiscard]] static SmoothFn polynomial(std::vector<double> coefficients);

        /// Forward higher-order differentiation of a generic callable that
        /// accepts a Jet4 (and, for the value path, a double).
        template <typename F>
        [[nodiscard]] static SmoothFn from_expression(F f, std::string name = "expression")
        {
                return SmoothFn(
                        [f](const double x)
                        {
                                return f(Jet4::variable(x));
                        },
                        [f](const double x)
                        {
                                return static_cast<double>(f(x));
                        },
                        std::move(name));
        }

        /// c * self
        [[nodiscard]] SmoothFn scaled(double c) const;

private:
        JetFn jet_;
        ValueFn value_;
        std::string name_;
};

/// Checks d1..d4 of fn at x against 9-point central finite differences of
/// the value. The comparison is relative where the derivative magnitude is
/// at least 1 and absolute otherwise.
[[nodiscard]] bool validate_jet(const SmoothFn& fn, double x, double tol);

/// Finite-difference derivatives (orders 1..4) of the value of fn at x
/// with step `step`, as used by validate_jet.
[[nodiscard]] std::array<double, 4> finite_difference_derivatives(const SmoothFn& fn, double x, double step);
}
