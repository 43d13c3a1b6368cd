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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wcnf
{
/// Uniform cells on [x_min, x_max].
struct GridSpec final
{
        double x_min = -1;
        double x_max = 1;
        std::size_t n_cells = 1;

        void validate() const;

        [[nodiscard]] double dx() const
        {
                return (x_max - x_min) / static_cast<double>(n_cells);
        }

        [[nodiscard]] double center(const std::size_t i) const
        {
                return x_min + (static_cast<double>(i) + 0.5) * dx();
        }

        friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Cell-averaged probability density.
struct Grid1D final
{
        GridSpec spec;
        std::vector<double> values;

        [[nodiscard]] double mass() const;
        [[nodiscard]] double mean() const;
        [[nodiscard]] double variance() const;

        /// Scales values so that mass() == 1. Throws ConfigError on zero mass.
        void normalize();

        /// Density sampled at cell centers, then normalized.
        [[nodiscard]] static Grid1D from_density(const GridSpec& spec, const std::function<double(double)>& density);
};

/// Largest dt accepted by fpe_evolve: dx^2 / (2 max k2).
[[nodiscard]] double fpe_max_stable_dt(const KineticCoefficients& kc, const GridSpec& spec);

/// Explicit central-difference integration of the flux form
///   dp/dt = -d/dx [ M p - (k dp/dx + d(k p)/dx) / 4 ],   k = k2,
/// with zero flux through both ends, from 0 to t_end with steps no longer
/// than dt. Throws StabilityError if dt > fpe_max_stable_dt and
/// ValidityError if k2 < 0 anywhere on the grid.
[[nodiscard]] Grid1D fpe_evolve(const KineticCoefficients& kc, const Grid1D& grid0, double dt, double t_end);

/// Normalized histogram of the samples that fall on the grid. Throws
/// ConfigError for fewer than 1000 samples and CoverageError when less than
/// `min_coverage` of them fall on the grid.
[[nodiscard]] Grid1D mc_histogram(std::span<const double> samples, const GridSpec& spec,
                                  double min_coverage = 0.999);

/// sum |a_i - b_i| dx. Throws GridMismatchError unless a.spec == b.spec.
[[nodiscard]] double l1_distance(const Grid1D& a, const Grid1D& b);

/// [mean - spread sd, mean + spread sd] of the samples.
[[nodiscard]] GridSpec grid_around(std::span<const double> samples, std::size_t n_cells, double spread = 6);
}
