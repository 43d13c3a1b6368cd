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

#include <stdexcept>
#include <string>

namespace wcnf
{
/// Base of every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
        using std::runtime_error::runtime_error;
};

/// The noise coefficient g vanished (|g| below the singularity threshold).
class SingularityError final : public Error
{
public:
        using Error::Error;
};

/// A weak-colour validity condition failed (negative radicand or negative k2).
class ValidityError final : public Error
{
public:
        using Error::Error;
};

/// An explicit scheme was configured outside its stability region.
class StabilityError final : public Error
{
public:
        using Error::Error;
};

/// A state or intermediate quantity became NaN or infinite.
class NonFiniteError final : public Error
{
public:
        using Error::Error;
};

/// Evaluation point outside the configured state domain.
class DomainError final : public Error
{
public:
        using Error::Error;
};

/// Invalid parameters or configuration.
class ConfigError final : public Error
{
public:
        using Error::Error;
};

/// Too many Monte-Carlo samples fall outside a histogram grid.
class CoverageError final : public Error
{
public:
        using Error::Error;
};

/// Two densities defined on different grids were combined.
class GridMismatchError final : public Error
{
public:
        using Error::Error;
};

class IoError final : public Error
{
public:
        using Error::Error;
};
}
