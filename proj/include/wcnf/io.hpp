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

#include <filesystem>
#include <string>
#include <vector>

namespace wcnf
{
/// Named columns of equal length.
struct Series final
{
        std::vector<std::string> columns;
        std::vector<std::vector<double>> data; // data[c][row]

        [[nodiscard]] std::size_t rows() const;
        void validate() const;
};

/// Header row, then one line per row with every value printed to 17
/// significant digits (enough to read back bit-for-bit). Throws IoError
/// with the OS message when the file cannot be written.
void export_csv(const Series& series, const std::filesystem::path& path);
[[nodiscard]] Series read_csv(const std::filesystem::path& path);

/// Filter output aligned with the truth and observation grid.
/// dz[k] is the increment over [t[k], t[k+1]]; the last row repeats 0.
struct FilterTrajectory final
{
        std::vector<double> t;
        std::vector<double> x_true;
        std::vector<double> x_hat;
        std::vector<double> P;
        std::vector<double> dz;
};

[[nodiscard]] Series to_series(const Path& path);              // t,x
[[nodiscard]] Series to_series(const ObservationSeries& obs);  // t,dz
[[nodiscard]] Series to_series(const Grid1D& grid);            // x,p
[[nodiscard]] Series to_series(const FilterTrajectory& traj);  // t,x_true,x_hat,P,dz
}
