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

#include <wcnf/rng.hpp>

namespace wcnf
{
namespace
{
std::mt19937_64 make_engine(const std::uint64_t master_seed, const Stream stream, const std::uint64_t index)
{
        std::seed_seq seq{
                static_cast<std::uint32_t>(master_seed & 0xffffffffu),
                static_cast<std::uint32_t>(master_seed >> 32),
                static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(index & 0xffffffffu),
                static_cast<std::uint32_t>(index >> 32),
        };
        return std::mt19937_64(seq);
}
}

Rng::Rng(const std::uint64_t master_seed, const Stream stream, const std::uint64_t index)
        : engine_(make_engine(master_seed, stream, index)),
          normal_(0.0, 1.0)
{
}
}
