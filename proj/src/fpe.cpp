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

#include <wcnf/fpe.hpp>

#include <wcnf/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wcnf
{
void GridSpec::validate() const
{
        if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
        {
                throw ConfigError("grid requires finite x_min < x_max");
        }
        if (n_cells == 0)
        {
                throw ConfigError("grid requires at least one cell");
        }
}

double Grid1D::mass() const
{
        double s = 0;
        for (const double v : values)
        {
                s += v;
        }
        return s * spec.dx();
}

double Grid1D::mean() const
{
        double s = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
                s += spec.center(i) * values[i];
        }
        return s * spec.dx() / mass();
}

double Grid1D::variance() const
{
        const double m = mean();
        double s = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
                const double d = spec.center(i) - m;
                s += d * d * values[i];
        }
        return s * spec.dx() / mass();
}

void Grid1D::normalize()
{
        const double m = mass();
        if (!(m > 0) || !std::isfinite(m))
        {
                throw ConfigError("cannot normalize a density with zero or non-finite mass");
        }
        for (double& v : values)
        {
                v /= m;
        }
}

Grid1D Grid1D::from_density(const GridSpec& spec, const std::function<double(double)>& density)
{
        spec.validate();
        Grid1D grid{.spec = spec, .values = std::vector<double>(spec.n_cells)};
        for (std::size_t i = 0; i < spec.n_cells; ++i)
        {
                grid.values[i] = density(spec.center(i));
        }
        grid.normalize();
        return grid;
}

namespace
{
struct Coefficients final
{
        std::vector<double> k_node;
        std::vector<double> k_face;
        std::vector<double> m_face;
};

// Faces are the n - 1 interior cell boundaries.
Coefficients sample_coefficients(const KineticCoefficients& kc, const GridSpec& spec)
{
        const std::size_t n = spec.n_cells;
        const double dx = spec.dx();
        Coefficients c;
        c.k_node.resize(n);
        c.k_face.resize(n > 0 ? n - 1 : 0);
        c.m_face.resize(c.k_face.size());

        const auto check_k = [](const double x, const double k)
        {
                if (!(k >= 0) || !std::isfinite(k))
                {
                        std::ostringstream oss;
                        oss << "diffusion coefficient k2(" << x << ") = " << k << " is negative or non-finite";
                        throw ValidityError(oss.str());
                }
        };

        for (std::size_t i = 0; i < n; ++i)
        {
                const double x = spec.center(i);
                c.k_node[i] = kc.k2(x);
                check_k(x, c.k_node[i]);
        }
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
                const double x = spec.x_min + static_cast<double>(i + 1) * dx;
                c.k_face[i] = kc.k2(x);
                check_k(x, c.k_face[i]);
                c.m_face[i] = kc.M(x);
                if (!std::isfinite(c.m_face[i]))
                {
                        std::ostringstream oss;
                        oss << "drift M(" << x << ") is not finite";
                        throw NonFiniteError(oss.str());
                }
        }
        return c;
}

double max_stable_dt(const Coefficients& c, const double dx)
{
        double k_max = 0;
        for (const double k : c.k_node)
        {
                k_max = std::max(k_max, k);
        }
        for (const double k : c.k_face)
        {
                k_max = std::max(k_max, k);
        }
        return k_max > 0 ? dx * dx / (2 * k_max) : std::numeric_limits<double>::infinity();
}
}

double fpe_max_stable_dt(const KineticCoefficients& kc, const GridSpec& spec)
{
        spec.validate();
        return max_stable_dt(sample_coefficients(kc, spec), spec.dx());
}

Grid1D fpe_evolve(const KineticCoefficients& kc, const Grid1D& grid0, const double dt, const double t_end)
{
        const GridSpec& spec = grid0.spec;
        spec.validate();
        if (grid0.values.size() != spec.n_cells)
        {
                throw ConfigError("grid values do not match the number of cells");
        }
        if (!(dt > 0) || !(t_end >= 0))
        {
                throw ConfigError("fpe_evolve needs dt > 0 and t_end >= 0");
        }

        const Coefficients c = sample_coefficients(kc, spec);
        const double dx = spec.dx();
        const double limit = max_stable_dt(c, dx);
        if (dt > limit)
        {
                std::ostringstream oss;
                oss << "FPE time step " << dt << " exceeds the explicit stability limit dx^2/(2 max k2) = " << limit;
                throw StabilityError(oss.str());
        }

        Grid1D grid = grid0;
        const std::size_t n = spec.n_cells;
        if (t_end == 0 || n < 2)
        {
                return grid;
        }
        const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
        const double h = t_end / static_cast<double>(steps);
        const double ratio = h / dx;
        const double inv_dx = 1 / dx;

        std::vector<double>& p = grid.values;
        std::vector<double> flux(n - 1);
        for (std::size_t step = 0; step < steps; ++step)
        {
                for (std::size_t i = 0; i + 1 < n; ++i)
                {
                        const double advective = c.m_face[i] * 0.5 * (p[i] + p[i + 1]);
                        const double diffusive =
                                0.25 * inv_dx
                                * (c.k_face[i] * (p[i + 1] - p[i]) + (c.k_node[i + 1] * p[i + 1] - c.k_node[i] * p[i]));
                        flux[i] = advective - diffusive;
                }
                p[0] -= ratio * flux[0];
                for (std::size_t i = 1; i + 1 < n; ++i)
                {
                        p[i] -= ratio * (flux[i] - flux[i - 1]);
                }
                p[n - 1] += ratio * flux[n - 2];
        }
        return grid;
}

Grid1D mc_histogram(const std::span<const double> samples, const GridSpec& spec, const double min_coverage)
{
        spec.validate();
        if (samples.size() < 1000)
        {
                std::ostringstream oss;
                oss << "histogram needs at least 1000 samples, got " << samples.size();
                throw ConfigError(oss.str());
        }
        const double dx = spec.dx();
        Grid1D grid{.spec = spec, .values = std::vector<double>(spec.n_cells, 0.0)};
        std::size_t inside = 0;
        for (const double x : samples)
        {
                if (!(x >= spec.x_min && x <= spec.x_max))
                {
                        continue;
                }
                auto idx = static_cast<std::size_t>((x - spec.x_min) / dx);
                idx = std::min(idx, spec.n_cells - 1);
                grid.values[idx] += 1;
                ++inside;
        }
        const double coverage = static_cast<double>(inside) / static_cast<double>(samples.size());
        if (coverage < min_coverage)
        {
                std::ostringstream oss;
                oss << "grid [" << spec.x_min << ", " << spec.x_max << "] covers " << inside << " of " << samples.size()
                    << " samples (" << 100 * coverage << "%), below the required " << 100 * min_coverage << "%";
                throw CoverageError(oss.str());
        }
        const double scale = 1 / (static_cast<double>(inside) * dx);
        for (double& v : grid.values)
        {
                v *= scale;
        }
        return grid;
}

double l1_distance(const Grid1D& a, const Grid1D& b)
{
        if (!(a.spec == b.spec) || a.values.size() != b.values.size())
        {
                throw GridMismatchError("L1 distance between densities on different grids");
        }
        double s = 0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
        {
                s += std::abs(a.values[i] - b.values[i]);
        }
        return s * a.spec.dx();
}

GridSpec grid_around(const std::span<const double> samples, const std::size_t n_cells, const double spread)
{
        if (samples.empty())
        {
                throw ConfigError("cannot place a grid around an empty sample");
        }
        double mean = 0;
        for (const double x : samples)
        {
                mean += x;
        }
        mean /= static_cast<double>(samples.size());
        double var = 0;
        for (const double x : samples)
        {
                var += (x - mean) * (x - mean);
        }
        var /= static_cast<double>(samples.size());
        const double half = spread * std::sqrt(var);
        if (!(half > 0))
        {
                throw ConfigError("samples have zero spread");
        }
        GridSpec spec{.x_min = mean - half, .x_max = mean + half, .n_cells = n_cells};
        spec.validate();
        return spec;
}
}
