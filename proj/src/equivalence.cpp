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

#include <cmath>
#include <sstream>

namespace wcnf
{
bool Domain::is_bounded() const
{
        return std::isfinite(lo) && std::isfinite(hi);
}

SystemModel::SystemModel(SmoothFn f, SmoothFn g, Domain domain, const double singularity_threshold)
        : f_(std::move(f)),
          g_(std::move(g)),
          domain_(domain),
          threshold_(singularity_threshold)
{
        if (!(domain_.lo < domain_.hi))
        {
                throw ConfigError("system domain must satisfy lo < hi");
        }
        if (!(threshold_ > 0))
        {
                throw ConfigError("singularity threshold must be > 0");
        }
        if (domain_.is_bounded())
        {
                constexpr int PROBES = 101;
                for (int i = 1; i <= PROBES; ++i)
                {
                        const double x = domain_.lo + (domain_.hi - domain_.lo) * i / (PROBES + 1);
                        if (!(std::abs(g_(x)) >= threshold_))
                        {
                                std::ostringstream oss;
                                oss << "noise coefficient g vanishes inside the domain near x = " << x;
                                throw SingularityError(oss.str());
                        }
                }
        }
}

void SystemModel::check_domain(const double x) const
{
        if (!domain_.contains(x))
        {
                std::ostringstream oss;
                oss << "x = " << x << " is outside the model domain [" << domain_.lo << ", " << domain_.hi << "]";
                throw DomainError(oss.str());
        }
}

LocalJets local_jets(const SystemModel& m, const double x)
{
        m.check_domain(x);
        LocalJets j{.f = m.f().jet(x), .g = m.g().jet(x), .u = {}};
        try
        {
                j.u = ratio_jet(j.f, j.g, m.singularity_threshold());
        }
        catch (const SingularityError&)
        {
                std::ostringstream oss;
                oss << "noise coefficient g(" << x << ") = " << j.g.value << " is singular for f/g";
                throw SingularityError(oss.str());
        }
        return j;
}

KineticValues kinetic_coefficients(const LocalJets& j, const ColouredStats& s)
{
        const double g = j.g.value;
        const double g1 = j.g.d1;
        const double u1 = j.u.d1;
        return {
                .k1 = j.f.value + 0.5 * s.mu1 * g * g1 + s.mu2 * g * g * g1 * u1,
                .k2 = s.mu1 * g * g + 2 * s.mu2 * g * g * g * u1,
        };
}

KineticValues kinetic_coefficients(const SystemModel& m, const ColouredStats& s, const double x)
{
        return kinetic_coefficients(local_jets(m, x), s);
}

double diffusion_slope(const LocalJets& j, const ColouredStats& s)
{
        const double g = j.g.value;
        const double g1 = j.g.d1;
        return 2 * s.mu1 * g * g1 + 2 * s.mu2 * (3 * g * g * g1 * j.u.d1 + g * g * g * j.u.d2);
}

double effective_drift(const LocalJets& j, const ColouredStats& s)
{
        const double g = j.g.value;
        const double g2 = g * g;
        return j.f.value - 0.5 * s.mu2 * g2 * j.g.d1 * j.u.d1 - 0.5 * s.mu2 * g2 * g * j.u.d2;
}

double effective_drift(const SystemModel& m, const ColouredStats& s, const double x)
{
        return effective_drift(local_jets(m, x), s);
}

double effective_diffusion(const LocalJets& j, const ColouredStats& s)
{
        const double g = j.g.value;
        const double radicand = s.mu1 + 2 * s.mu2 * g * j.u.d1;
        if (radicand < 0)
        {
                std::ostringstream oss;
                oss << "negative diffusion radicand " << radicand
                    << ": the noise correlation time is too large for the weak-colour expansion here";
                throw ValidityError(oss.str());
        }
        return std::abs(g) * std::sqrt(radicand);
}

double effective_diffusion(const SystemModel& m, const ColouredStats& s, const double x)
{
        const LocalJets j = local_jets(m, x);
        try
        {
                return effective_diffusion(j, s);
        }
        catch (const ValidityError& e)
        {
                std::ostringstream oss;
                oss << e.what() << " (x = " << x << ")";
                throw ValidityError(oss.str());
        }
}

FpeDecomposition fpe_decomposition(const SystemModel& m, const ColouredStats& s, const double x)
{
        const LocalJets j = local_jets(m, x);
        const KineticValues kv = kinetic_coefficients(j, s);
        return {.M = kv.k1 - 0.25 * diffusion_slope(j, s), .k = kv.k2};
}

KineticCoefficients KineticCoefficients::from_model(const SystemModel& m, const ColouredStats& s)
{
        s.validate();
        return {
                .k1 =
                        [m, s](const double x)
                {
                        return kinetic_coefficients(m, s, x).k1;
                },
                .k2 =
                        [m, s](const double x)
                {
                        return kinetic_coefficients(m, s, x).k2;
                },
                .M =
                        [m, s](const double x)
                {
                        return fpe_decomposition(m, s, x).M;
                },
        };
}

KineticCoefficients KineticCoefficients::from_functions(ScalarFn k1, ScalarFn k2, ScalarFn k2_slope)
{
        if (!k1 || !k2 || !k2_slope)
        {
                throw ConfigError("kinetic coefficients need k1, k2 and dk2/dx");
        }
        ScalarFn m = [k1, k2_slope](const double x)
        {
                return k1(x) - 0.25 * k2_slope(x);
        };
        return {.k1 = std::move(k1), .k2 = std::move(k2), .M = std::move(m)};
}

EquivalentIto::EquivalentIto(Evaluator eval)
        : eval_(std::move(eval))
{
        if (!eval_)
        {
                throw ConfigError("equivalent Ito system needs an evaluator");
        }
}

EquivalentIto EquivalentIto::from_model(const SystemModel& m, const ColouredStats& s)
{
        s.validate();
        return EquivalentIto(
                [m, s](const double x)
                {
                        const LocalJets j = local_jets(m, x);
                        double b = 0;
                        try
                        {
                                b = effective_diffusion(j, s);
                        }
                        catch (const ValidityError& e)
                        {
                                std::ostringstream oss;
                                oss << e.what() << " (x = " << x << ")";
                                throw ValidityError(oss.str());
                        }
                        return ItoCoefficients{
                                .drift = effective_drift(j, s),
                                .diffusion = b,
                                .ito_drift = kinetic_coefficients(j, s).k1,
                        };
                });
}

EquivalentIto EquivalentIto::additive(ScalarFn a, const double sigma)
{
        if (!a)
        {
                throw ConfigError("drift evaluator is empty");
        }
        if (!(sigma >= 0))
        {
                throw ConfigError("diffusion must be >= 0");
        }
        return EquivalentIto(
                [a = std::move(a), sigma](const double x)
                {
                        const double drift = a(x);
                        return ItoCoefficients{.drift = drift, .diffusion = sigma, .ito_drift = drift};
                });
}
}
