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


#include <wcnf/io.hpp>

#include <wcnf/error.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace wcnf
{
std::size_t Series::rows() const
{
        return data.empty() ? 0 : data.front().size();
}

void Series::validate() const
{
        if (columns.size() != data.size())
        {
                throw ConfigError("series has a different number of column names and columns");
        }
        for (const auto& col : data)
        {
                if (col.size() != rows())
                {
                        throw ConfigError("series columns differ in length");
                }
        }
}

namespace
{
[[noreturn]] void io_failure(const std::string& what, const std::filesystem::path& path)
{
        const int err = errno;
        std::ostringstream oss;
        oss << what << " '" << path.string() << "'";
        if (err != 0)
        {
                oss << ": " << std::strerror(err);
        }
        throw IoError(oss.str());
}

std::vector<std::string> split(const std::string& line)
{
        std::vector<std::string> fields;
        std::string field;
        std::istringstream iss(line);
        while (std::getline(iss, field, ','))
        {
                fields.push_back(field);
        }
        if (!line.empty() && line.back() == ',')
        {
                fields.emplace_back();
        }
        return fields;
}
}

void export_csv(const Series& series, const std::filesystem::path& path)
{
        series.validate();
        errno = 0;
        std::FILE* file = std::fopen(path.c_str(), "wb");
        if (file == nullptr)
        {
                io_failure("cannot open for writing", path);
        }
        std::string text;
        for (std::size_t c = 0; c < series.columns.size(); ++c)
        {
                text += (c == 0 ? "" : ",") + series.columns[c];
        }
        text += '\n';
        char buf[32];
        for (std::size_t r = 0; r < series.rows(); ++r)
        {
                for (std::size_t c = 0; c < series.data.size(); ++c)
                {
                        if (c > 0)
                        {
                                text += ',';
                        }
                        std::snprintf(buf, sizeof buf, "%.17g", series.data[c][r]);
                        text += buf;
                }
                text += '\n';
        }
        const bool ok = std::fwrite(text.data(), 1, text.size(), file) == text.size();
        if (std::fclose(file) != 0 || !ok)
        {
                io_failure("cannot write", path);
        }
}

Series read_csv(const std::filesystem::path& path)
{
        errno = 0;
        std::ifstream in(path);
        if (!in)
        {
                io_failure("cannot open for reading", path);
        }
        Series series;
        std::string line;
        if (!std::getline(in, line))
        {
                io_failure("missing header row in", path);
        }
        series.columns = split(line);
        series.data.resize(series.columns.size());
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
                ++line_no;
                const std::vector<std::string> fields = split(line);
                if (fields.size() != series.columns.size())
                {
                        std::ostringstream oss;
                        oss << path.string() << ":" << line_no << ": expected " << series.columns.size()
                            << " fields, got " << fields.size();
                        throw IoError(oss.str());
                }
                for (std::size_t c = 0; c < fields.size(); ++c)
                {
                        char* end = nullptr;
                        const double v = std::strtod(fields[c].c_str(), &end);
                        if (fields[c].empty() || *end != '\0')
                        {
                                std::ostringstream oss;
                                oss << path.string() << ":" << line_no << ": not a number: '" << fields[c] << "'";
                                throw IoError(oss.str());
                        }
                        series.data[c].push_back(v);
                }
        }
        return series;
}

Series to_series(const Path& path)
{
        return {.columns = {"t", "x"}, .data = {path.times, path.states}};
}

Series to_series(const ObservationSeries& obs)
{
        return {.columns = {"t", "dz"}, .data = {obs.times, obs.increments}};
}

Series to_series(const Grid1D& grid)
{
        std::vector<double> x(grid.values.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
                x[i] = grid.spec.center(i);
        }
        return {.columns = {"x", "p"}, .data = {std::move(x), grid.values}};
}

Series to_series(const FilterTrajectory& traj)
{
        return {.columns = {"t", "x_true", "x_hat", "P", "dz"},
                .data = {traj.t, traj.x_true, traj.x_hat, traj.P, traj.dz}};
}
}
