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

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>

namespace wcnf
{
/// Independent random streams derived from one master seed.
enum class Stream : std::uint32_t
{
        PROCESS = 1,       // Brownian increments of the state (or of the OU input)
        OBSERVATION = 2,   // observation noise
        INITIAL_STATE = 3, // random initial states of ensembles
        INITIAL_NOISE = 4, // stationary initial OU values
        ESTIMATE = 5,      // initial filter estimates
};

/// Keyed substream generator.
///
/// The substream for (master seed, stream, index) is a std::mt19937_64 seeded
/// through std::seed_seq with the five 32-bit words
///   {seed_lo, seed_hi, stream, index_lo, index_hi}.
/// Both the engine and seed_seq are fully specified by the standard, and the
/// Gaussian transform is Boost's ziggurat, so draws are reproducible across
/// platforms. Paths with the same (seed, stream, index) see the same draws
/// whichever simulator consumes them.
class Rng final
{
public:
        Rng(std::uint64_t master_seed, Stream stream, std::uint64_t index);

        double normal()
        {
                return normal_(engine_);
        }

        double uniform()
        {
                return std::generate_canonical<double, 53>(engine_);
        }

private:
        std::mt19937_64 engine_;
        boost::random::normal_distribution<double> normal_;
};
}
