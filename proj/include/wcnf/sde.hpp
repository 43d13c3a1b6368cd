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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wcnf
{
struct SimConfig final
{
        double dt = 1e-3;
        double t_end = 1;
        std::uint64_t seed = 0;
        std::size_t n_paths = 1;

        /// Throws ConfigError unless 0 < dt <= t_end, n_paths >= 1 and t_end
        /// is an integer multiple of dt (to 1e-6 dt).
        void validate() const;

        [[nodiscard]] std::size_t steps() const;
};

/// Samples on the uniform grid t_k = k dt, k = 0..steps.
struct Path final
{
        std::vector<double> times;
        std::vector<double> states;
};

struct ColouredPath final
{
        Path x;
        std::vector<double> xi;
};

/// increments[k] is the observation increment over [times[k], times[k] + dt].
struct ObservationSeries final
{
        std::vector<double> times;
        std::vector<double> increments;
};

/// Euler-Maruyama on the augmented state (x, xi):
///   x  <- x + (f(x) + g(x) xi) dt
///   xi <- ou_step(xi, dB)
/// with dB drawn from the PROCESS substream `path_index` of cfg.seed.
[[nodiscard]] ColouredPath simulate_coloured(const SystemModel& m, const OUParams& p, double xi0, double x0,
                                             const SimConfig& cfg, std::size_t path_index = 0);

/// Euler-Maruyama on dx = k1(x) dt + b(x) dB, where k1 is the Ito drift of
/// the equivalent system. Uses the same PROCESS substream as
/// simulate_coloured, so both simulators see common Brownian increments.
[[nodiscard]] Path simulate_ito(const EquivalentIto& eq, double x0, const SimConfig& cfg,
                                std::size_t path_index = 0);

/// dz_k = h(x_k) dt + sqrt(phi_eta dt) N(0, 1), drawn from the OBSERVATION
/// substream of `seed`.
[[nodiscard]] ObservationSeries simulate_observations(const Path& path, const ObservationModel& obs,
                                                      std::uint64_t seed, std::size_t path_index = 0);

/// x0 ~ N(mean, stddev^2), from the INITIAL_STATE substream.
struct InitialCondition final
{
        double mean = 0;
        double stddev = 0;
};

/// States at t_end of cfg.n_paths coloured paths. The OU input starts from
/// its stationary law N(0, D / tau_cor) (INITIAL_NOISE substream).
[[nodiscard]] std::vector<double> coloured_ensemble(const SystemModel& m, const OUParams& p,
                                                    const InitialCondition& x0, const SimConfig& cfg);

/// States at t_end of cfg.n_paths paths of the equivalent Ito system.
[[nodiscard]] std::vector<double> ito_ensemble(const EquivalentIto& eq, const InitialCondition& x0,
                                               const SimConfig& cfg);
}
