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

#include <wcnf/observation.hpp>

#include <wcnf/error.hpp>

#include <cmath>

namespace wcnf
{
void ObservationModel::validate() const
{
        if (!(phi_eta > 0) || !std::isfinite(phi_eta))
        {
                throw ConfigError("observation intensity phi_eta must satisfy 0 < phi_eta < infinity");
        }
}

void ObservationModel::validate_for_simulation() const
{
        if (!(phi_eta >= 0) || !std::isfinite(phi_eta))
        {
                throw ConfigError("observation intensity phi_eta must be finite and >= 0");
        }
}

ObservationModel ObservationModel::linear(const double phi_eta, const double gain)
{
        return {.h = SmoothFn::polynomial({0, gain}), .phi_eta = phi_eta};
}
}
