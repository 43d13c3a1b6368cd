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

#include <wcnf/noise.hpp>

#include <wcnf/error.hpp>

#include <cmath>
#include <sstream>

namespace wcnf
{
void OUParams::validate() const
{
        if (!(D >= 0) || !std::isfinite(D))
        {
                throw ConfigError("OU intensity D must be finite and >= 0");
        }
        if (!(tau_cor > 0) || !std::isfinite(tau_cor))
        {
                throw ConfigError("OU correlation time must be finite and > 0");
        }
}

void ColouredStats::validate() const
{
        if (!(mu1 >= 0) || !(mu2 >= 0) || !std::isfinite(mu1) || !std::isfinite(mu2))
        {
                throw ConfigError("correlation moments must be finite and >= 0");
        }
}

ColouredStats ou_stats(const OUParams& p)
{
        p.validate();
        return {.mu1 = 2 * p.D, .mu2 = p.D * p.tau_cor};
}

AutocorrelationFn ou_autocorrelation(const OUParams& p)
{
        p.validate();
        return [d = p.D, tau_c = p.tau_cor](const double tau)
        {
                return (d / tau_c) * std::exp(-std::abs(tau) / tau_c);
        };
}

ColouredStats stats_from_autocorrelation(const AutocorrelationFn& r, const double tail_cutoff,
                                         const double quad_step)
{
        if (!(tail_cutoff > 0) || !(quad_step > 0))
        {
                throw ConfigError("tail cutoff and quadrature step must be > 0");
        }

        const auto n = static_cast<long long>(std::ceil(tail_cutoff / quad_step));
        const double h = tail_cutoff / static_cast<double>(n);

        double integral = 0;
        double moment = 0;
        for (long long i = 0; i <= n; ++i)
        {
                const double tau = -static_cast<double>(i) * h;
                const double value = r(tau);
                if (!std::isfinite(value))
                {
                        std::ostringstream oss;
                        oss << "autocorrelation is not finite at tau = " << tau;
                        throw NonFiniteError(oss.str());
                }
                const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
                integral += weight * value;
                moment += weight * tau * value;
        }
        return {.mu1 = 2 * integral * h, .mu2 = std::abs(moment * h)};
}

ColouredStats stats_from_autocorrelation(const AutocorrelationFn& r, const double quad_step)
{
        if (!(quad_step > 0))
        {
                throw ConfigError("quadrature step must be > 0");
        }
        const double r0 = std::abs(r(0));
        if (r0 == 0)
        {
                return {};
        }
        double cutoff = quad_step;
        while (std::abs(r(-cutoff)) >= 1e-12 * r0)
        {
                cutoff *= 2;
                if (!std::isfinite(cutoff) || cutoff > 1e300)
                {
                        throw NonFiniteError("autocorrelation does not decay");
                }
        }
        return stats_from_autocorrelation(r, 1.5 * cutoff, quad_step);
}

bool is_stationary_autocorrelation(const AutocorrelationFn& r, const std::span<const double> taus)
{
        const double r0 = r(0);
        for (const double tau : taus)
        {
                if (std::abs(r(tau)) > r0)
                {
                        return false;
                }
        }
        return true;
}

void check_ou_step(const OUParams& p, const double dt)
{
        p.validate();
        if (!(dt > 0))
        {
                throw ConfigError("time step must be > 0");
        }
        if (dt > p.tau_cor / 10 * (1 + 1e-12))
        {
                std::ostringstream oss;
                oss << "time step " << dt << " exceeds tau_cor/10 = " << p.tau_cor / 10
                    << " required for the coloured-noise Euler-Maruyama scheme";
                throw StabilityError(oss.str());
        }
}
}
