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

#include <wcnf/fpe.hpp>
#include <wcnf/sde.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace wcnf
{
/// f = -x - x^3, g = x + 2: confining, with g bounded away from zero on
/// the region the default ensembles visit.
[[nodiscard]] SystemModel cubic_test_system();

struct EquivalenceCheckConfig final
{
        SystemModel model = cubic_test_system();
        OUParams ou{.D = 0.02, .tau_cor = 0.005};
        InitialCondition x0{.mean = 0.5, .stddev = 0.2};
        double t_end = 1;
        std::size_t n_paths = 100000;
        std::size_t n_cells = 400;
        std::uint64_t seed = 1;
        /// Monte-Carlo step; 0 selects tau_cor / 10.
        double dt = 0;
        /// FPE step as a fraction of the explicit stability limit.
        double fpe_dt_fraction = 0.5;
};

struct EquivalenceReport final
{
        Grid1D coloured;
        Grid1D ito;
        Grid1D fpe;
        double l1_coloured_ito = 0;
        double l1_coloured_fpe = 0;
        double l1_ito_fpe = 0;

        [[nodiscard]] double max_l1() const;
};

/// Densities at t_end of (i) the coloured system, (ii) its equivalent Ito
/// system, both by Monte Carlo, and (iii) the Fokker-Planck solution, on a
/// grid placed at mean +- 6 sd of the coloured ensemble.
[[nodiscard]] EquivalenceReport check_equivalence(const EquivalenceCheckConfig& cfg);

struct ColourLimitPoint final
{
        double tau_cor;
        double l1; // coloured MC vs white-noise (mu2 = 0) MC
};

/// For each correlation time (same D), the L1 distance between the coloured
/// ensemble and the white-noise ensemble with mu2 = 0, both at dt = tau/10.
[[nodiscard]] std::vector<ColourLimitPoint> colour_limit_sweep(const EquivalenceCheckConfig& base,
                                                               std::span<const double> taus);
}
