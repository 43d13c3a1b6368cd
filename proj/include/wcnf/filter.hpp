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

#include <wcnf/equivalence.hpp>
#include <wcnf/noise.hpp>
#include <wcnf/observation.hpp>

#include <optional>
#include <string_view>

namespace wcnf
{
/// Conditional mean and variance at time t.
struct FilterState final
{
        double t = 0;
        double x_hat = 0;
        double P = 0;
};

enum class FilterMode
{
        SECOND_ORDER_COLOURED,
        SECOND_ORDER_CLASSICAL, // same equations with mu2 = 0
        DUFFING_CLOSED_FORM,
};

[[nodiscard]] std::string_view to_string(FilterMode mode);
[[nodiscard]] FilterMode parse_filter_mode(std::string_view text);

/// Overdamped Duffing system driven by OU noise
///   dx/dt = -(alpha/beta) x + (a/beta) x^3 - (x/beta) xi(t),
/// observed through h(x) = x with intensity phi_eta.
struct DuffingParams final
{
        double alpha = -0.001;
        double beta = 1e4;
        double a = 0.001;
        double D = 5;
        double tau_cor = 0.005;
        double phi_eta = 1e4;

        void validate() const;

        [[nodiscard]] OUParams ou() const
        {
                return {.D = D, .tau_cor = tau_cor};
        }
};

/// f = -(alpha/beta) x + (a/beta) x^3, g = x/beta. The sign of the noise
/// term is absorbed into the symmetric input.
[[nodiscard]] SystemModel duffing_system(const DuffingParams& p);
[[nodiscard]] ObservationModel duffing_observation(const DuffingParams& p);

struct FilterOptions final
{
        double variance_floor = 1e-12;
        FilterMode mode = FilterMode::SECOND_ORDER_COLOURED;
        /// false gives the open-loop predictor (measurement gain forced to 0).
        bool measurement_update = true;
        /// Required in DUFFING_CLOSED_FORM mode.
        std::optional<DuffingParams> duffing;

        void validate() const;
};

/// What the variance guard did on one step.
struct GuardReport final
{
        bool forcing_dropped = false;
        bool clamped = false;
};

/// Drift a and diffusion k2 = b^2 with the derivatives the second-order
/// closure needs, at one point.
struct SecondOrderTerms final
{
        double a;
        double a1;
        double a2;
        double k2;
        double half_k2_2; // k2'' / 2
};

[[nodiscard]] SecondOrderTerms second_order_terms(const LocalJets& j, const ColouredStats& s);
[[nodiscard]] SecondOrderTerms second_order_terms(const SystemModel& m, const ColouredStats& s, double x);

/// a(x_hat) + P a''(x_hat) / 2: the deterministic part of the mean equation.
[[nodiscard]] double mean_drift(const SystemModel& m, const ColouredStats& s, const ObservationModel& obs,
                                const FilterState& st);

/// 2 P a' + b^2 + P (b^2)''/2 - P^2 h'^2 / phi_eta.
[[nodiscard]] double variance_drift(const SystemModel& m, const ColouredStats& s, const ObservationModel& obs,
                                    const FilterState& st);

/// max(P, variance_floor)
[[nodiscard]] double variance_guard(double P, const FilterOptions& opts);

/// One explicit Euler step of the second-order filter consuming the
/// observation increment dz over [t, t + dt].
[[nodiscard]] FilterState filter_step(const FilterState& st, double dz, double dt, const SystemModel& m,
                                      const ColouredStats& s, const ObservationModel& obs, const FilterOptions& opts,
                                      GuardReport* report = nullptr);

/// Closed-form Duffing brackets with mu1 = 2 D, mu2 = D tau_cor.
[[nodiscard]] double duffing_mean_drift(const DuffingParams& p, double x_hat, double P);
[[nodiscard]] double duffing_variance_drift(const DuffingParams& p, double x_hat, double P,
                                            bool measurement_update = true);

[[nodiscard]] FilterState duffing_step(const FilterState& st, double dz, double dt, const DuffingParams& p,
                                       const FilterOptions& opts, GuardReport* report = nullptr);
}
