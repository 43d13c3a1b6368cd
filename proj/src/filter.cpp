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

#include <wcnf/filter.hpp>

#include <wcnf/error.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace wcnf
{
namespace
{
void check_finite(const char* term, const double value, const FilterState& st)
{
        if (!std::isfinite(value))
        {
                std::ostringstream oss;
                oss << "filter term '" << term << "' is not finite (" << value << ") at t = " << st.t
                    << ", x_hat = " << st.x_hat << ", P = " << st.P;
                throw NonFiniteError(oss.str());
        }
}

ColouredStats effective_stats(const ColouredStats& s, const FilterMode mode)
{
        if (mode == FilterMode::SECOND_ORDER_CLASSICAL)
        {
                return {.mu1 = s.mu1, .mu2 = 0};
        }
        return s;
}

double variance_drift_impl(const SecondOrderTerms& t, const double P, const double h1, const double inv_phi)
{
        return 2 * P * t.a1 + t.k2 + P * t.half_k2_2 - P * P * h1 * h1 * inv_phi;
}

// Applies the modified-filter rule and the floor to the predicted variance.
double guarded_variance(const double deterministic, const double forcing, const bool nonlinear_h,
                        const FilterOptions& opts, GuardReport* report)
{
        double next = deterministic + forcing;
        if (nonlinear_h && next < opts.variance_floor)
        {
                next = deterministic;
                if (report)
                {
                        report->forcing_dropped = true;
                }
        }
        if (next < opts.variance_floor && report)
        {
                report->clamped = true;
        }
        return variance_guard(next, opts);
}
}

std::string_view to_string(const FilterMode mode)
{
        switch (mode)
        {
        case FilterMode::SECOND_ORDER_COLOURED:
                return "coloured";
        case FilterMode::SECOND_ORDER_CLASSICAL:
                return "classical";
        case FilterMode::DUFFING_CLOSED_FORM:
                return "closed-form";
        }
        return "unknown";
}

FilterMode parse_filter_mode(const std::string_view text)
{
        if (text == "coloured" || text == "colored")
        {
                return FilterMode::SECOND_ORDER_COLOURED;
        }
        if (text == "classical")
        {
                return FilterMode::SECOND_ORDER_CLASSICAL;
        }
        if (text == "closed-form")
        {
                return FilterMode::DUFFING_CLOSED_FORM;
        }
        throw ConfigError("unknown filter mode '" + std::string(text) + "' (expected coloured|classical|closed-form)");
}

void DuffingParams::validate() const
{
        if (!std::isfinite(alpha) || !std::isfinite(a))
        {
                throw ConfigError("Duffing alpha and a must be finite");
        }
        if (!(beta != 0) || !std::isfinite(beta))
        {
                throw ConfigError("Duffing beta must be finite and nonzero");
        }
        ou().validate();
        if (!(phi_eta > 0) || !std::isfinite(phi_eta))
        {
                throw ConfigError("observation intensity phi_eta must satisfy 0 < phi_eta < infinity");
        }
}

SystemModel duffing_system(const DuffingParams& p)
{
        p.validate();
        return SystemModel(SmoothFn::polynomial({0, -p.alpha / p.beta, 0, p.a / p.beta}),
                           SmoothFn::polynomial({0, 1 / p.beta}));
}

ObservationModel duffing_observation(const DuffingParams& p)
{
        p.validate();
        return ObservationModel::linear(p.phi_eta);
}

void FilterOptions::validate() const
{
        if (!(variance_floor > 0) || !std::isfinite(variance_floor))
        {
                throw ConfigError("variance floor must be finite and > 0");
        }
        if (mode == FilterMode::DUFFING_CLOSED_FORM)
        {
                if (!duffing)
                {
                        throw ConfigError("closed-form mode requires Duffing parameters");
                }
                duffing->validate();
        }
}

SecondOrderTerms second_order_terms(const LocalJets& j, const ColouredStats& s)
{
        const double g = j.g.value;
        const double g1 = j.g.d1;
        const double g2 = j.g.d2;
        const double g3 = j.g.d3;
        const double u1 = j.u.d1;
        const double u2 = j.u.d2;
        const double u3 = j.u.d3;
        const double u4 = j.u.d4;
        const double gg = g * g;
        const double ggg = gg * g;
        const double mu1 = s.mu1;
        const double mu2 = s.mu2;

        SecondOrderTerms t{};
        t.a = j.f.value - 0.5 * mu2 * (gg * g1 * u1 + ggg * u2);
        t.a1 = j.f.d1 - 0.5 * mu2 * (4 * gg * g1 * u2 + gg * g2 * u1 + 2 * g * g1 * g1 * u1 + ggg * u3);
        t.a2 = j.f.d2
               - 0.5 * mu2
                         * (ggg * u4 + 7 * gg * g1 * u3 + 5 * gg * g2 * u2 + 10 * g * g1 * g1 * u2 + gg * g3 * u1
                            + 2 * g1 * g1 * g1 * u1 + 6 * g * g1 * g2 * u1);
        t.k2 = mu1 * gg + 2 * mu2 * ggg * u1;
        t.half_k2_2 = mu2 * ggg * u3 + 6 * mu2 * gg * g1 * u2 + 3 * mu2 * gg * g2 * u1 + 6 * mu2 * g * g1 * g1 * u1
                      + mu1 * g * g2 + mu1 * g1 * g1;
        return t;
}

SecondOrderTerms second_order_terms(const SystemModel& m, const ColouredStats& s, const double x)
{
        return second_order_terms(local_jets(m, x), s);
}

double mean_drift(const SystemModel& m, const ColouredStats& s, const ObservationModel&, const FilterState& st)
{
        const SecondOrderTerms t = second_order_terms(m, s, st.x_hat);
        return t.a + 0.5 * st.P * t.a2;
}

double variance_drift(const SystemModel& m, const ColouredStats& s, const ObservationModel& obs,
                      const FilterState& st)
{
        obs.validate();
        const SecondOrderTerms t = second_order_terms(m, s, st.x_hat);
        return variance_drift_impl(t, st.P, obs.h.jet(st.x_hat).d1, 1 / obs.phi_eta);
}

double variance_guard(const double P, const FilterOptions& opts)
{
        return P < opts.variance_floor || std::isnan(P) ? opts.variance_floor : P;
}

FilterState filter_step(const FilterState& st, const double dz, const double dt, const SystemModel& m,
                        const ColouredStats& s, const ObservationModel& obs, const FilterOptions& opts,
                        GuardReport* report)
{
        if (!(dt > 0))
        {
                throw ConfigError("filter step dt must be > 0");
        }
        if (opts.mode == FilterMode::DUFFING_CLOSED_FORM)
        {
                opts.validate();
                return duffing_step(st, dz, dt, *opts.duffing, opts, report);
        }
        obs.validate();

        const ColouredStats stats = effective_stats(s, opts.mode);
        const SecondOrderTerms t = second_order_terms(m, stats, st.x_hat);
        const Jet4 h = obs.h.jet(st.x_hat);
        const double inv_phi = opts.measurement_update ? 1 / obs.phi_eta : 0.0;
        const double P = st.P;

        const double drift = t.a + 0.5 * P * t.a2;
        check_finite("mean drift", drift, st);
        const double p_drift = variance_drift_impl(t, P, h.d1, inv_phi);
        check_finite("variance drift", p_drift, st);
        const double innovation = dz - (h.value + 0.5 * P * h.d2) * dt;
        check_finite("innovation", innovation, st);

        FilterState next;
        next.t = st.t + dt;
        next.x_hat = st.x_hat + drift * dt + P * h.d1 * inv_phi * innovation;
        check_finite("conditional mean", next.x_hat, st);

        const double forcing = P * P * h.d2 * inv_phi * innovation;
        next.P = guarded_variance(P + p_drift * dt, forcing, h.d2 != 0, opts, report);
        check_finite("conditional variance", next.P, st);
        return next;
}

double duffing_mean_drift(const DuffingParams& p, const double x, const double P)
{
        const double mu2 = p.D * p.tau_cor;
        const double b = p.beta;
        const double b3 = b * b * b;
        const double x3 = x * x * x;
        return -(p.alpha / b) * x + (p.a / b) * x3 - (2 * p.a * mu2 / b3) * x3
               + 0.5 * P * (6 * p.a * x / b - 12 * p.a * mu2 * x / b3);
}

double duffing_variance_drift(const DuffingParams& p, const double x, const double P, const bool measurement_update)
{
        const double mu1 = 2 * p.D;
        const double mu2 = p.D * p.tau_cor;
        const double b = p.beta;
        const double b2 = b * b;
        const double b3 = b2 * b;
        const double x2 = x * x;
        const double injection = mu1 > 0 ? (mu1 * x2 / b2) * (1 + 4 * mu2 * p.a * x2 / (b * mu1)) : 0.0;
        const double inv_phi = measurement_update ? 1 / p.phi_eta : 0.0;
        return 2 * P * (-p.alpha / b + 3 * p.a * x2 / b - 6 * p.a * mu2 * x2 / b3) + injection
               + 0.5 * P * (2 * mu1 / b2 + 48 * p.a * mu2 * x2 / b3) - P * P * inv_phi;
}

FilterState duffing_step(const FilterState& st, const double dz, const double dt, const DuffingParams& p,
                         const FilterOptions& opts, GuardReport* report)
{
        p.validate();
        if (!(dt > 0))
        {
                throw ConfigError("filter step dt must be > 0");
        }
        const double inv_phi = opts.measurement_update ? 1 / p.phi_eta : 0.0;

        const double drift = duffing_mean_drift(p, st.x_hat, st.P);
        check_finite("mean drift", drift, st);
        const double p_drift = duffing_variance_drift(p, st.x_hat, st.P, opts.measurement_update);
        check_finite("variance drift", p_drift, st);

        FilterState next;
        next.t = st.t + dt;
        next.x_hat = st.x_hat + drift * dt + st.P * inv_phi * (dz - st.x_hat * dt);
        check_finite("conditional mean", next.x_hat, st);
        next.P = guarded_variance(st.P + p_drift * dt, 0.0, false, opts, report);
        return next;
}
}
