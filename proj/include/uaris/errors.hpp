// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace uaris {

/// Base of every error raised by the simulator.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical or physical domain of an operation.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// A caller broke a documented precondition (mismatched sizes, wrong load kind, ...).
class ContractViolation : public Error
{
public:
    using Error::Error;
};

/// Load impedance equal to -Z0; the reflection coefficient has a pole there.
class SingularityError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// The two basis phasors of a reflector pair are colinear.
class SingularPairing : public Error
{
public:
    SingularPairing(std::string what, int first_id = -1, int second_id = -1)
        : Error(std::move(what)), first_id(first_id), second_id(second_id) {}

    int first_id;
    int second_id;
};

/// No two elements share a reflected wavefront.
class NoPairs : public Error
{
public:
    using Error::Error;
};

/// A beam pattern without any distinguishable maximum.
class NoLobes : public Error
{
public:
    using Error::Error;
};

/// Malformed scenario or input document. `field` names the offending key path.
class InputError : public Error
{
public:
    InputError(std::string field, const std::string &message)
        : Error(field + ": " + message), field(std::move(field)) {}

    std::string field;
};

} // namespace uaris
