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

#include <wcnf/validation.hpp>

#include <wcnf/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wcnf
{
SystemModel cubic_test_system()
{
        return SystemModel(SmoothFn::polynomial({0, -1, 0, -1}), SmoothFn::polynomial({2, 1}));
}

double EquivalenceReport::max_l1() const
{
        return std::max({l1_coloured_ito, l1_coloured_fpe, l1_ito_fpe});
}

namespace
{
SimConfig mc_config(const EquivalenceCheckConfig& cfg, const double tau)
{
        const double dt = cfg.dt > 0 ? cfg.dt : tau / 10;
        return {.dt = dt, .t_end = cfg.t_end, .seed = cfg.seed, .n_paths = cfg.n_paths};
}
}

EquivalenceReport check_equivalence(const EquivalenceCheckConfig& cfg)
{
        if (!(cfg.x0.stddev > 0))
        {
                throw ConfigError("equivalence check needs a spread-out initial density (stddev > 0)");
        }
        const ColouredStats stats = ou_stats(cfg.ou);
        const SimConfig sim = mc_config(cfg, cfg.ou.tau_cor);

        const std::vector<double> coloured = coloured_ensemble(cfg.model, cfg.ou, cfg.x0, sim);
        const std::vector<double> ito = ito_ensemble(EquivalentIto::from_model(cfg.model, stats), cfg.x0, sim);

        const GridSpec spec = grid_around(coloured, cfg.n_cells);

        EquivalenceReport report;
        report.coloured = mc_histogram(coloured, spec);
        report.ito = mc_histogram(ito, spec);

        const double m0 = cfg.x0.mean;
        const double s0 = cfg.x0.stddev;
        const Grid1D initial = Grid1D::from_density(spec,
                                                    [m0, s0](const double x)
                                                    {
                                                            const double z = (x - m0) / s0;
                                                            return std::exp(-0.5 * z * z);
                                                    });
        const KineticCoefficients kc = KineticCoefficients::from_model(cfg.model, stats);
        const double fpe_dt = cfg.fpe_dt_fraction * fpe_max_stable_dt(kc, spec);
        report.fpe = fpe_evolve(kc, initial, fpe_dt, cfg.t_end);

        report.l1_coloured_ito = l1_distance(report.coloured, report.ito);
        report.l1_coloured_fpe = l1_distance(report.coloured, report.fpe);
        report.l1_ito_fpe = l1_distance(report.ito, report.fpe);
        return report;
}

std::vector<ColourLimitPoint> colour_limit_sweep(const EquivalenceCheckConfig& base, const std::span<const double> taus)
{
        std::vector<ColourLimitPoint> points;
        points.reserve(taus.size());
        for (const double tau : taus)
        {
                const OUParams ou{.D = base.ou.D, .tau_cor = tau};
                const SimConfig sim = mc_config(base, tau);
                const std::vector<double> coloured = coloured_ensemble(base.model, ou, base.x0, sim);
                const ColouredStats white{.mu1 = 2 * ou.D, .mu2 = 0};
                const std::vector<double> reference =
                        ito_ensemble(EquivalentIto::from_model(base.model, white), base.x0, sim);
                const GridSpec spec = grid_around(coloured, base.n_cells);
                points.push_back(
                        {.tau_cor = tau, .l1 = l1_distance(mc_histogram(coloured, spec), mc_histogram(reference, spec))});
        }
        return points;
}
}
