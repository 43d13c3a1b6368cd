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

#include <wcnf/jet.hpp>
#include <wcnf/noise.hpp>

#include <functional>
#include <limits>

// Stochastic equivalence of the coloured system  dx/dt = f(x) + g(x) xi(t)
// with a white-noise diffusion. With u = f/g and correlation moments
// (mu1, mu2) the Fokker-Planck coefficients are
//
//   k1 = f + (mu1/2) g g' + mu2 g^2 g' u'
//   k2 = mu1 g^2 + 2 mu2 g^3 u'
//
// and k1 = a + k2'/4 with the symmetric-form drift
//
//   a = f - (mu2/2) g^2 g' u' - (mu2/2) g^3 u''
//
// and diffusion b = sqrt(k2) = |g| sqrt(mu1 + 2 mu2 g u').
// The pair (a, b) drives the symmetric (Stratonovich) form; an Euler-Maruyama
// integrator needs the Ito drift k1 = a + b b' / 2.

namespace wcnf
{
struct Domain final
{
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();

        [[nodiscard]] bool contains(const double x) const
        {
                return x >= lo && x <= hi;
        }

        [[nodiscard]] bool is_bounded() const;
};

/// The coloured system pair (f, g).
class SystemModel final
{
public:
        /// When the domain is bounded, g is probed at 101 interior points and
        /// SingularityError is thrown if it vanishes at any of them.
        SystemModel(SmoothFn f, SmoothFn g, Domain domain = {},
                    double singularity_threshold = DEFAULT_SINGULARITY_THRESHOLD);

        [[nodiscard]] const SmoothFn& f() const
        {
                return f_;
        }

        [[nodiscard]] const SmoothFn& g() const
        {
                return g_;
        }

        [[nodiscard]] const Domain& domain() const
        {
                return domain_;
        }

        [[nodiscard]] double singularity_threshold() const
        {
                return threshold_;
        }

        /// Throws DomainError when x is outside the domain.
        void check_domain(double x) const;

private:
        SmoothFn f_;
        SmoothFn g_;
        Domain domain_;
        double threshold_;
};

/// Jets of f, g and u = f/g at one point.
struct LocalJets final
{
        Jet4 f;
        Jet4 g;
        Jet4 u;
};

/// Throws DomainError or SingularityError.
[[nodiscard]] LocalJets local_jets(const SystemModel& m, double x);

struct KineticValues final
{
        double k1;
        double k2;
};

struct FpeDecomposition final
{
        double M;
        double k;
};

[[nodiscard]] KineticValues kinetic_coefficients(const SystemModel& m, const ColouredStats& s, double x);
[[nodiscard]] KineticValues kinetic_coefficients(const LocalJets& j, const ColouredStats& s);

/// d k2 / dx
[[nodiscard]] double diffusion_slope(const LocalJets& j, const ColouredStats& s);

[[nodiscard]] double effective_drift(const SystemModel& m, const ColouredStats& s, double x);
[[nodiscard]] double effective_drift(const LocalJets& j, const ColouredStats& s);

/// Throws ValidityError when mu1 + 2 mu2 g u' < 0, i.e. the colour is too
/// strong for the expansion at this x.
[[nodiscard]] double effective_diffusion(const SystemModel& m, const ColouredStats& s, double x);
[[nodiscard]] double effective_diffusion(const LocalJets& j, const ColouredStats& s);

/// M = k1 - k2'/4 and k = k2, computed from the kinetic coefficients (not
/// from the drift formula), so that M == effective_drift is a checkable identity.
[[nodiscard]] FpeDecomposition fpe_decomposition(const SystemModel& m, const ColouredStats& s, double x);

using ScalarFn = std::function<double(double)>;

/// Evaluators of the Fokker-Planck coefficients
///   dp/dt = -d/dx (k1 p) + 1/2 d^2/dx^2 (k2 p),  M = k1 - k2'/4.
struct KineticCoefficients final
{
        ScalarFn k1;
        ScalarFn k2;
        ScalarFn M;

        [[nodiscard]] static KineticCoefficients from_model(const SystemModel& m, const ColouredStats& s);

        /// k2_slope is dk2/dx.
        [[nodiscard]] static KineticCoefficients from_functions(ScalarFn k1, ScalarFn k2, ScalarFn k2_slope);
};

struct ItoCoefficients final
{
        double drift;     // a
        double diffusion; // b >= 0
        double ito_drift; // a + b b' / 2
};

/// The white-noise system that shares the coloured system's Fokker-Planck
/// equation.
class EquivalentIto final
{
public:
        using Evaluator = std::function<ItoCoefficients(double)>;

        explicit EquivalentIto(Evaluator eval);

        [[nodiscard]] static EquivalentIto from_model(const SystemModel& m, const ColouredStats& s);

        /// State-independent diffusion sigma; Ito and symmetric drifts coincide.
        [[nodiscard]] static EquivalentIto additive(ScalarFn a, double sigma);

        [[nodiscard]] ItoCoefficients operator()(const double x) const
        {
                return eval_(x);
        }

        [[nodiscard]] double a(const double x) const
        {
                return eval_(x).drift;
        }

        [[nodiscard]] double b(const double x) const
        {
                return eval_(x).diffusion;
        }

private:
        Evaluator eval_;
};
}
