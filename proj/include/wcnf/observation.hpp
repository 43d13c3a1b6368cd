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

#include <wcnf/jet.hpp>

namespace wcnf
{
/// dz = h(x) dt + d eta,  var(d eta) = phi_eta dt.
struct ObservationModel final
{
        SmoothFn h;
        double phi_eta = 1;

        /// Throws ConfigError unless 0 < phi_eta < infinity. A zero intensity
        /// means noiseless observation, for which the filter does not exist.
        void validate() const;

        /// Same as validate but also accepts phi_eta == 0, which the
        /// observation simulator supports.
        void validate_for_simulation() const;

        [[nodiscard]] static ObservationModel linear(double phi_eta, double gain = 1);
};
}
