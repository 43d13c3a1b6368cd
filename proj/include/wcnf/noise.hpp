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

#include <cmath>
#include <functional>
#include <span>

namespace wcnf
{
/// Ornstein-Uhlenbeck input noise
///   d xi = -(xi / tau_cor) dt + (sqrt(2 D) / tau_cor) dB.
struct OUParams final
{
        double D = 0;       // intensity, state^2 * time
        double tau_cor = 1; // correlation time

        /// Throws ConfigError unless D >= 0 and tau_cor > 0.
        void validate() const;

        /// Stationary variance D / tau_cor.
        [[nodiscard]] double stationary_variance() const
        {
                return D / tau_cor;
        }
};

/// Correlation moments of a stationary input noise: mu1 is twice the
/// integrated autocorrelation, mu2 the magnitude of its first moment.
struct ColouredStats final
{
        double mu1 = 0;
        double mu2 = 0;

        void validate() const;

        friend constexpr bool operator==(const ColouredStats&, const ColouredStats&) = default;
};

/// R(tau) for tau <= 0.
using AutocorrelationFn = std::function<double(double)>;

[[nodiscard]] ColouredStats ou_stats(const OUParams& p);

/// (D / tau_cor) exp(-|tau| / tau_cor)
[[nodiscard]] AutocorrelationFn ou_autocorrelation(const OUParams& p);

/// Composite trapezoid over (-tail_cutoff, 0]. mu2 is taken as the absolute
/// value of the first-moment integral so that the OU kernel yields D tau_cor.
[[nodiscard]] ColouredStats stats_from_autocorrelation(const AutocorrelationFn& r, double tail_cutoff,
                                                       double quad_step);

/// Same, with the cutoff placed where |R| first drops below 1e-12 R(0)
/// (searched by doubling from quad_step) and then extended by half again.
[[nodiscard]] ColouredStats stats_from_autocorrelation(const AutocorrelationFn& r, double quad_step);

/// R(0) >= |R(tau)| at every sample point.
[[nodiscard]] bool is_stationary_autocorrelation(const AutocorrelationFn& r, std::span<const double> taus);

/// One Euler-Maruyama step of the OU process with a caller-supplied
/// Brownian increment dB ~ N(0, dt).
[[nodiscard]] inline double ou_step(const double xi, const OUParams& p, const double dt, const double dB)
{
        return xi + (-xi / p.tau_cor) * dt + (std::sqrt(2 * p.D) / p.tau_cor) * dB;
}

/// Throws StabilityError unless dt <= tau_cor / 10.
void check_ou_step(const OUParams& p, double dt);
}
