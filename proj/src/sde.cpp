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

#include <wcnf/sde.hpp>

#include <wcnf/error.hpp>
#include <wcnf/parallel.hpp>
#include <wcnf/rng.hpp>

#include <cmath>
#include <sstream>

namespace wcnf
{
namespace
{
[[noreturn]] void throw_non_finite(const char* what, const std::size_t step, const double value)
{
        std::ostringstream oss;
        oss << what << " became non-finite (" << value << ") at step " << step;
        throw NonFiniteError(oss.str());
}

// Advances one coloured path in place for `steps` steps; `on_step` sees
// (k + 1, x, xi) after each step.
template <typename OnStep>
void run_coloured(const SystemModel& m, const OUParams& p, double& x, double& xi, const double dt,
                  const std::size_t steps, Rng& rng, OnStep&& on_step)
{
        const double sqrt_dt = std::sqrt(dt);
        const SmoothFn& f = m.f();
        const SmoothFn& g = m.g();
        for (std::size_t k = 0; k < steps; ++k)
        {
                m.check_domain(x);
                const double dB = sqrt_dt * rng.normal();
                const double next = x + (f(x) + g(x) * xi) * dt;
                xi = ou_step(xi, p, dt, dB);
                if (!std::isfinite(next))
                {
                        throw_non_finite("coloured state", k + 1, next);
                }
                x = next;
                on_step(k + 1, x, xi);
        }
}

template <typename OnStep>
void run_ito(const EquivalentIto& eq, double& x, const double dt, const std::size_t steps, Rng& rng,
             OnStep&& on_step)
{
        const double sqrt_dt = std::sqrt(dt);
        for (std::size_t k = 0; k < steps; ++k)
        {
                const double dB = sqrt_dt * rng.normal();
                ItoCoefficients c{};
                try
                {
                        c = eq(x);
                }
                catch (const ValidityError& e)
                {
                        std::ostringstream oss;
                        oss << e.what() << " at step " << k;
                        throw ValidityError(oss.str());
                }
                const double next = x + c.ito_drift * dt + c.diffusion * dB;
                if (!std::isfinite(next))
                {
                        throw_non_finite("Ito state", k + 1, next);
                }
                x = next;
                on_step(k + 1, x);
        }
}

Path make_path(const SimConfig& cfg, const double x0)
{
        const std::size_t n = cfg.steps();
        Path path;
        path.times.resize(n + 1);
        path.states.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
        {
                path.times[k] = static_cast<double>(k) * cfg.dt;
        }
        path.states[0] = x0;
        return path;
}
}

void SimConfig::validate() const
{
        if (!(dt > 0) || !std::isfinite(dt))
        {
                throw ConfigError("dt must be finite and > 0");
        }
        if (!(t_end >= dt) || !std::isfinite(t_end))
        {
                throw ConfigError("t_end must be finite and >= dt");
        }
        if (n_paths == 0)
        {
                throw ConfigError("n_paths must be positive");
        }
        const double ratio = t_end / dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-6)
        {
                std::ostringstream oss;
                oss << "t_end = " << t_end << " is not an integer multiple of dt = " << dt;
                throw ConfigError(oss.str());
        }
}

std::size_t SimConfig::steps() const
{
        return static_cast<std::size_t>(std::llround(t_end / dt));
}

ColouredPath simulate_coloured(const SystemModel& m, const OUParams& p, const double xi0, const double x0,
                               const SimConfig& cfg, const std::size_t path_index)
{
        cfg.validate();
        check_ou_step(p, cfg.dt);

        ColouredPath result;
        result.x = make_path(cfg, x0);
        result.xi.resize(result.x.times.size());
        result.xi[0] = xi0;

        Rng rng(cfg.seed, Stream::PROCESS, path_index);
        double x = x0;
        double xi = xi0;
        run_coloured(m, p, x, xi, cfg.dt, cfg.steps(), rng,
                     [&](const std::size_t k, const double xk, const double xik)
                     {
                             result.x.states[k] = xk;
                             result.xi[k] = xik;
                     });
        return result;
}

Path simulate_ito(const EquivalentIto& eq, const double x0, const SimConfig& cfg, const std::size_t path_index)
{
        cfg.validate();
        Path path = make_path(cfg, x0);
        Rng rng(cfg.seed, Stream::PROCESS, path_index);
        double x = x0;
        run_ito(eq, x, cfg.dt, cfg.steps(), rng,
                [&](const std::size_t k, const double xk)
                {
                        path.states[k] = xk;
                });
        return path;
}

ObservationSeries simulate_observations(const Path& path, const ObservationModel& obs, const std::uint64_t seed,
                                        const std::size_t path_index)
{
        obs.validate_for_simulation();
        if (path.times.size() != path.states.size())
        {
                throw ConfigError("path times and states differ in length");
        }
        ObservationSeries series;
        if (path.times.size() < 2)
        {
                return series;
        }
        const std::size_t n = path.times.size() - 1;
        const double dt = path.times[1] - path.times[0];
        if (!(dt > 0))
        {
                throw ConfigError("path times must be increasing");
        }
        const double noise_scale = std::sqrt(obs.phi_eta * dt);

        Rng rng(seed, Stream::OBSERVATION, path_index);
        series.times.assign(path.times.begin(), path.times.end() - 1);
        series.increments.resize(n);
        for (std::size_t k = 0; k < n; ++k)
        {
                const double noise = noise_scale > 0 ? noise_scale * rng.normal() : 0.0;
                series.increments[k] = obs.h(path.states[k]) * dt + noise;
        }
        return series;
}

std::vector<double> coloured_ensemble(const SystemModel& m, const OUParams& p, const InitialCondition& x0,
                                      const SimConfig& cfg)
{
        cfg.validate();
        check_ou_step(p, cfg.dt);
        const double xi_sd = std::sqrt(p.stationary_variance());
        const std::size_t steps = cfg.steps();

        std::vector<double> terminal(cfg.n_paths);
        parallel_for(cfg.n_paths,
                     [&](const std::size_t i)
                     {
                             Rng init(cfg.seed, Stream::INITIAL_STATE, i);
                             Rng noise_init(cfg.seed, Stream::INITIAL_NOISE, i);
                             Rng rng(cfg.seed, Stream::PROCESS, i);
                             double x = x0.mean + x0.stddev * init.normal();
                             double xi = xi_sd * noise_init.normal();
                             run_coloured(m, p, x, xi, cfg.dt, steps, rng,
                                          [](std::size_t, double, double)
                                          {
                                          });
                             terminal[i] = x;
                     });
        return terminal;
}

std::vector<double> ito_ensemble(const EquivalentIto& eq, const InitialCondition& x0, const SimConfig& cfg)
{
        cfg.validate();
        const std::size_t steps = cfg.steps();

        std::vector<double> terminal(cfg.n_paths);
        parallel_for(cfg.n_paths,
                     [&](const std::size_t i)
                     {
                             Rng init(cfg.seed, Stream::INITIAL_STATE, i);
                             Rng rng(cfg.seed, Stream::PROCESS, i);
                             double x = x0.mean + x0.stddev * init.normal();
                             run_ito(eq, x, cfg.dt, steps, rng,
                                     [](std::size_t, double)
                                     {
                                     });
                             terminal[i] = x;
                     });
        return terminal;
}
}
